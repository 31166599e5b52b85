#include "support.hpp"

#include <gtest/gtest.h>

using namespace eivarx;

TEST(NelderMead, Rosenbrock) {
    const auto f = [](const Vector& x) {
        return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
    };
    NelderMeadOptions opt;
    opt.max_iter = 5000;
    opt.f_tol = 1e-14;
    opt.x_tol = 1e-10;
    const NelderMeadResult r = nelder_mead(f, Vector{{-1.2, 1.0}}, opt);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x(0), 1.0, 1e-4);
    EXPECT_NEAR(r.x(1), 1.0, 1e-4);
}

TEST(NelderMead, RespectsBounds) {
    const auto f = [](const Vector& x) { return (x.array() - 3.0).square().sum(); };
    NelderMeadOptions opt;
    opt.lower = Vector{{-1.0, -1.0}};
    opt.upper = Vector{{2.0, 5.0}};
    const NelderMeadResult r = nelder_mead(f, Vector{{0.0, 0.0}}, opt);
    EXPECT_NEAR(r.x(0), 2.0, 1e-5);
    EXPECT_NEAR(r.x(1), 3.0, 1e-5);
    EXPECT_LE(r.x(0), 2.0);
}

TEST(Rng, DeterministicStreams) {
    GaussianStream a(7), b(7), c(8);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.next();
        EXPECT_EQ(x, b.next());
        differs |= x != c.next();
    }
    EXPECT_TRUE(differs);
    EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
}

TEST(Rng, StandardNormalMoments) {
    GaussianStream g(123);
    const int n = 200000;
    double s = 0, s2 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = g.next();
        s += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
    EXPECT_NEAR(s4 / n, 3.0, 0.06);
    GaussianStream u(5);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
}

TEST(Types, ThetaRoundTrip) {
    const DifferenceEquation m(Vector{{-1.1, 0.7}}, Vector{{1.0, 0.5}}, 2);
    EXPECT_EQ(m.ny(), 2);
    EXPECT_EQ(m.nu(), 3);
    EXPECT_EQ(m.eta(), 3);
    const Vector theta = m.theta();
    EXPECT_EQ(theta, (Vector{{1.0, -1.1, 0.7, 0.0, 0.0, 0.0, -1.0, -0.5}}));
    const DifferenceEquation back = DifferenceEquation::from_theta(theta, 2, 2, 3);
    EXPECT_EQ(back.a, m.a);
    EXPECT_EQ(back.b, m.b);
    EXPECT_THROW(DifferenceEquation(Vector(0), Vector(0), 0).validate(), InvalidArgument);
    EXPECT_THROW(DifferenceEquation(Vector(0), Vector{{1.0}}, -1).validate(), InvalidArgument);
}
