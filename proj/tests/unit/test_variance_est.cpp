#include "support.hpp"

#include <gtest/gtest.h>

#include <Eigen/LU>

#include <algorithm>
#include <random>

using namespace eivarx;
using namespace eivarx::testing;

namespace {

// Exact constraints of y = (1 + 0.5 q^-1) u at lag 3: three shifted rows.
ConstraintEstimate fir_constraints() {
    ConstraintEstimate c;
    c.d = 3;
    c.a_hat = Matrix::Zero(3, 4);
    c.b_hat = Matrix::Zero(3, 4);
    c.rotation = Matrix::Identity(3, 3);
    for (int i = 0; i < 3; ++i) {
        c.a_hat(i, i) = 1.0;
        c.b_hat(i, i) = 1.0;
        c.b_hat(i, i + 1) = 0.5;
    }
    return c;
}

LaggedMatrix white_fir_data(Index n, double s2y, double s2u, std::uint64_t seed) {
    const DifferenceEquation m(Vector(0), Vector{{1.0, 0.5}}, 0);
    const Vector u = generate_prbs(prbs_bits_for_length(n), n);
    const TimeSeriesPair s = simulate_dataset(m, u, {s2y, s2u}, seed);
    return stack(s, 3);
}

}  // namespace

TEST(VarianceObjective, MatchesDirectLikelihood) {
    const LaggedMatrix z = stack(example1_data(1023, 1), 5);
    const EigenResult e = eigendecompose(sample_covariance(z));
    const ConstraintEstimate c = recover_constraints(e, 4, Matrix::Identity(12, 12));
    const Acvf basis = scaled_acvf_basis(Vector{{-1.5, 0.7}}, 5);
    const Matrix r = compute_residuals(c, z);
    const VarianceObjective obj(c, basis, r.transpose() * r, r.rows());

    Matrix t(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) t(i, j) = basis.at(i - j);
    const Matrix p = c.a_hat * t * c.a_hat.transpose();
    const Matrix q = c.b_hat * c.b_hat.transpose();
    const Matrix scatter = r.transpose() * r;
    for (auto [s1, s2] : {std::pair{0.2, 0.1}, std::pair{0.05, 0.3}, std::pair{1.0, 1.0}}) {
        const Matrix sr = s1 * p + s2 * q;
        const double direct = static_cast<double>(r.rows()) * std::log(sr.determinant()) +
                              (sr.inverse() * scatter).trace();
        EXPECT_NEAR(obj.value(s1, s2), direct, 1e-8 * std::abs(direct));
        EXPECT_NEAR(negative_log_likelihood(s1, s2, c, basis, r), direct, 1e-8 * std::abs(direct));
    }
    EXPECT_TRUE(std::isinf(obj.value(-1.0, -1.0)));
}

TEST(VarianceObjective, GradientMatchesFiniteDifferences) {
    const LaggedMatrix z = stack(example1_data(1023, 2), 5);
    const ConstraintEstimate c =
        recover_constraints(eigendecompose(sample_covariance(z)), 4, Matrix::Identity(12, 12));
    const Matrix r = compute_residuals(c, z);
    const VarianceObjective obj(c, scaled_acvf_basis(Vector{{-1.5, 0.7}}, 5), r.transpose() * r,
                                r.rows());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> logv(std::log(0.02), std::log(2.0));
    for (int k = 0; k < 20; ++k) {
        const double l1 = logv(rng), l2 = logv(rng), h = 1e-5;
        const Eigen::Vector2d g = obj.gradient_log(std::exp(l1), std::exp(l2));
        const double f1 = (obj.value(std::exp(l1 + h), std::exp(l2)) -
                           obj.value(std::exp(l1 - h), std::exp(l2))) / (2 * h);
        const double f2 = (obj.value(std::exp(l1), std::exp(l2 + h)) -
                           obj.value(std::exp(l1), std::exp(l2 - h))) / (2 * h);
        const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
        EXPECT_NEAR(g(0), f1, 1e-4 * scale) << "point " << k;
        EXPECT_NEAR(g(1), f2, 1e-4 * scale) << "point " << k;
    }
}

TEST(VarianceEstimate, RecoversWhiteNoiseVariances) {
    const LaggedMatrix z = white_fir_data(60000, 1.0, 1.0, 4);
    VarianceOptions opt;
    const VarianceEstimate v = estimate_variances(fir_constraints(), z, Vector(0), opt);
    EXPECT_TRUE(v.converged);
    EXPECT_NEAR(v.sigma2_ey, 1.0, 0.05);
    EXPECT_NEAR(v.sigma2_eu, 1.0, 0.05);
}

TEST(VarianceEstimate, DoublingResidualsQuadruplesVariances) {
    const LaggedMatrix z = white_fir_data(8000, 0.3, 0.2, 5);
    LaggedMatrix z2 = z;
    z2.data *= 2.0;
    const VarianceEstimate v1 = estimate_variances(fir_constraints(), z, Vector(0));
    const VarianceEstimate v2 = estimate_variances(fir_constraints(), z2, Vector(0));
    EXPECT_NEAR(v2.sigma2_ey / v1.sigma2_ey, 4.0, 4e-3);
    EXPECT_NEAR(v2.sigma2_eu / v1.sigma2_eu, 4.0, 4e-3);
}

TEST(VarianceEstimate, RowOrderDoesNotMatter) {
    const LaggedMatrix z = white_fir_data(5000, 0.3, 0.2, 6);
    LaggedMatrix shuffled = z;
    std::vector<Index> idx(static_cast<std::size_t>(z.rows()));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::shuffle(idx.begin(), idx.end(), std::mt19937_64(1));
    for (Index i = 0; i < z.rows(); ++i) shuffled.data.row(i) = z.data.row(idx[i]);
    const VarianceEstimate a = estimate_variances(fir_constraints(), z, Vector(0));
    const VarianceEstimate b = estimate_variances(fir_constraints(), shuffled, Vector(0));
    EXPECT_NEAR(a.sigma2_ey, b.sigma2_ey, 1e-6 * a.sigma2_ey);
    EXPECT_NEAR(a.sigma2_eu, b.sigma2_eu, 1e-6 * a.sigma2_eu);
}

TEST(VarianceEstimate, ZeroResidualsAreDegenerate) {
    const LaggedMatrix z = white_fir_data(2000, 0.0, 0.0, 7);
    EXPECT_THROW(estimate_variances(fir_constraints(), z, Vector(0)), DegenerateNoise);
    const Matrix r = compute_residuals(fir_constraints(), z);
    EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_THROW(negative_log_likelihood(-0.1, 0.1, fir_constraints(), scaled_acvf_basis(Vector(0), 3), r),
                 InvalidArgument);
}
