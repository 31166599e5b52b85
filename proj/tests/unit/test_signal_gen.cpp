#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace eivarx;
using namespace eivarx::testing;

namespace {

bool has_period(const Vector& s, std::size_t p) {
    for (Index i = 0; i + static_cast<Index>(p) < s.size(); ++i)
        if (s(i) != s(i + static_cast<Index>(p))) return false;
    return true;
}

}  // namespace

TEST(Prbs, MaximalPeriodAndBalance) {
    for (int m = 2; m <= 20; ++m) {
        const std::size_t period = (std::size_t{1} << m) - 1;
        const Vector s = generate_prbs(m, 2 * period, 3);
        ASSERT_TRUE(has_period(s, period)) << "m=" << m;
        for (std::size_t p = 1; p < period; ++p)
            if (period % p == 0) ASSERT_FALSE(has_period(s, p)) << "m=" << m << " p=" << p;
        const Vector one = s.head(static_cast<Index>(period));
        const auto minus = (one.array() < 0).count();
        EXPECT_EQ(minus, Index{1} << (m - 1)) << "m=" << m;
        EXPECT_NEAR(one.mean(), -1.0 / static_cast<double>(period), 1e-12);
    }
}

TEST(Prbs, CustomLevelsAndSeeds) {
    const Vector s = generate_prbs(7, 127, 0, {2.0, 0.0});
    for (Index i = 0; i < s.size(); ++i) EXPECT_TRUE(s(i) == 2.0 || s(i) == 0.0);
    EXPECT_NEAR(s.mean(), 2.0 * 64.0 / 127.0, 1e-12);
    EXPECT_NE(generate_prbs(10, 100, 1), generate_prbs(10, 100, 2));
    EXPECT_EQ(generate_prbs(10, 100, 5), generate_prbs(10, 100, 5));
}

TEST(Prbs, RegisterSelectionAndErrors) {
    EXPECT_EQ(prbs_bits_for_length(1023), 10);
    EXPECT_EQ(prbs_bits_for_length(1024), 11);
    EXPECT_EQ(prbs_bits_for_length(4095), 12);
    EXPECT_THROW(generate_prbs(1, 10), InvalidArgument);
    EXPECT_THROW(generate_prbs(32, 10), InvalidArgument);
}

TEST(Simulate, NoiseFreeDataSatisfiesTheDifferenceEquation) {
    for (const auto& model : {example1_model(), example2_model()}) {
        const Vector u = generate_prbs(10, 1023);
        const Vector y = simulate_system(model, u);
        const LaggedMatrix z = stack(y, u, model.eta());
        const Vector r = z.data * model.theta();
        EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Simulate, IdentitySystem) {
    const DifferenceEquation id(Vector(0), Vector{{1.0}}, 0);
    const Vector u = generate_prbs(6, 63);
    EXPECT_EQ(simulate_system(id, u), u);
}

TEST(Simulate, ImpulseResponseMatchesPolynomialDivision) {
    const DifferenceEquation m = example2_model();
    Vector impulse = Vector::Zero(40);
    impulse(0) = 1.0;
    const Vector h = simulate_system(m, impulse);
    // A(q^-1) * H(q^-1) must reproduce q^-2 (1 + 0.5 q^-1) term by term.
    const Vector bf = m.b_full();
    for (Index k = 0; k < h.size(); ++k) {
        double conv = h(k);
        for (Index i = 0; i < m.a.size() && i < k; ++i) conv += m.a(i) * h(k - i - 1);
        const double expect = k < bf.size() ? bf(k) : 0.0;
        EXPECT_NEAR(conv, expect, 1e-12) << "k=" << k;
    }
    EXPECT_DOUBLE_EQ(h(0), 0.0);
    EXPECT_DOUBLE_EQ(h(1), 0.0);
    EXPECT_DOUBLE_EQ(h(2), 1.0);
    EXPECT_DOUBLE_EQ(h(3), 0.5 + 1.1);
}

TEST(Simulate, ColoredNoiseMatchesYuleWalker) {
    const std::size_t n = 100000;
    const Vector zero = Vector::Zero(static_cast<Index>(n));

    // AR(1) with pole 0.5: var 4/3, lag-1 covariance 2/3.
    const DifferenceEquation ar1(Vector{{-0.5}}, Vector{{1.0}}, 0);
    const TimeSeriesPair s1 = corrupt_measurements(zero, zero, ar1, {1.0, 0.0}, 11);
    const Vector& v = s1.y;
    const double c0 = v.squaredNorm() / static_cast<double>(n);
    const double c1 = v.head(n - 1).dot(v.tail(n - 1)) / static_cast<double>(n);
    EXPECT_NEAR(c0, 4.0 / 3.0, 0.04);
    EXPECT_NEAR(c1, 2.0 / 3.0, 0.04);
    EXPECT_EQ(s1.u, zero);

    const TimeSeriesPair s2 = corrupt_measurements(zero, zero, example1_model(), {0.2, 0.0}, 12);
    EXPECT_NEAR(sample_variance(s2.y) / 1.7708333, 1.0, 0.03);
}

TEST(Simulate, SeedReproducibility) {
    const TimeSeriesPair a = example1_data(1023, 42);
    const TimeSeriesPair b = example1_data(1023, 42);
    const TimeSeriesPair c = example1_data(1023, 43);
    EXPECT_EQ(a.y, b.y);
    EXPECT_EQ(a.u, b.u);
    EXPECT_NE(a.y, c.y);
    ASSERT_TRUE(a.u_star && a.y_star);
    EXPECT_EQ(*a.u_star, *c.u_star);
}

TEST(Simulate, InputSnrNearTen) {
    const TimeSeriesPair s = example1_data(4095, 5);
    const Vector e_u = s.u - *s.u_star;
    EXPECT_NEAR(snr(*s.u_star, e_u), 10.0, 1.0);
    EXPECT_NEAR(sample_variance(e_u), 0.1, 0.01);
}

TEST(Simulate, BurnInRule) {
    EXPECT_EQ(noise_burn_in(Vector(0), 0), 100);
    EXPECT_EQ(noise_burn_in(Vector{{-0.5}}, 3), 150);
    // Pole at 0.999: time constant ~1000 samples.
    EXPECT_GE(noise_burn_in(Vector{{-0.999}}, 1), 9990);
}

TEST(Simulate, ZeroNoiseLeavesSignalsUntouched) {
    const Vector u = generate_prbs(8, 255);
    const TimeSeriesPair s = simulate_dataset(example1_model(), u, {0.0, 0.0}, 1);
    EXPECT_EQ(s.u, u);
    EXPECT_EQ(s.y, *s.y_star);
}
