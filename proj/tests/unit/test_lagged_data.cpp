#include "support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace eivarx;
using namespace eivarx::testing;

TEST(Stack, Shapes) {
    const TimeSeriesPair s1 = example1_data(1023, 1);
    const LaggedMatrix z1 = stack(s1, 5);
    EXPECT_EQ(z1.rows(), 1018);
    EXPECT_EQ(z1.cols(), 12);
    const TimeSeriesPair s2 = example2_data(4095, 1);
    const LaggedMatrix z2 = stack(s2, 6);
    EXPECT_EQ(z2.rows(), 4089);
    EXPECT_EQ(z2.cols(), 14);
}

TEST(Stack, RowLayout) {
    const Vector y{{1, 2, 3, 4, 5, 6, 7}};
    const Vector u{{10, 20, 30, 40, 50, 60, 70}};
    const LaggedMatrix z = stack(y, u, 2);
    ASSERT_EQ(z.rows(), 5);
    EXPECT_EQ(Vector(z.data.row(0).transpose()), (Vector{{3, 2, 1, 30, 20, 10}}));
    EXPECT_EQ(Vector(z.data.row(4).transpose()), (Vector{{7, 6, 5, 70, 60, 50}}));
}

TEST(Stack, Preconditions) {
    EXPECT_THROW(stack(Vector::Ones(5), Vector::Ones(4), 1), InvalidArgument);
    EXPECT_THROW(stack(Vector::Ones(5), Vector::Ones(5), 5), InvalidArgument);
    EXPECT_THROW(stack(Vector::Ones(5), Vector::Ones(5), -1), InvalidArgument);
    EXPECT_NO_THROW(stack(Vector::Ones(5), Vector::Ones(5), 4));
}

TEST(Stack, CenteringSubtractsSeriesMeans) {
    const TimeSeriesPair s = example1_data(1023, 2);
    const LaggedMatrix z = stack(s, 3, true);
    const Vector yc = s.y.array() - s.y.mean();
    const Vector uc = s.u.array() - s.u.mean();
    EXPECT_EQ(z.data, stack(yc, uc, 3).data);
}

TEST(SampleCovariance, MatchesDefinitionAndIsPsd) {
    const TimeSeriesPair s = example1_data(1023, 3);
    const LaggedMatrix z = stack(s, 5);
    const SampleCovariance c = sample_covariance(z);
    EXPECT_EQ(c.row_count, 1018);
    const Matrix direct = z.data.transpose() * z.data / 1018.0;
    EXPECT_LT((c.matrix - direct).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(c.matrix, c.matrix.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(c.matrix);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(Scaling, InverseSquareRootRoundTrip) {
    const Matrix sigma = noise_covariance(Vector{{-1.5, 0.7}}, 0.2, 0.1, 5).full();
    const Matrix w = inverse_sqrt(sigma);
    EXPECT_LT((w * sigma * w - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((w - w.transpose()).cwiseAbs().maxCoeff(), 1e-12);

    const TimeSeriesPair s = example1_data(1023, 4);
    const SampleCovariance c = sample_covariance(stack(s, 5));
    const SampleCovariance scaled = scale_covariance(c, sigma);
    const Matrix sqrt_sigma = w.inverse();
    EXPECT_LT((sqrt_sigma * scaled.matrix * sqrt_sigma - c.matrix).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Scaling, RejectsIndefinite) {
    Matrix m = Matrix::Identity(3, 3);
    m(2, 2) = -1.0;
    EXPECT_THROW(inverse_sqrt(m), InvalidArgument);
}

TEST(Scaling, NoiseOnlyEigenvaluesAreUnity) {
    // White noise on both channels scaled by its own covariance.
    const Index n = 40000;
    GaussianStream g(9);
    Vector y(n), u(n);
    for (Index i = 0; i < n; ++i) {
        y(i) = std::sqrt(0.3) * g.next();
        u(i) = std::sqrt(0.1) * g.next();
    }
    const SampleCovariance c = sample_covariance(stack(y, u, 4));
    const CovarianceModel sigma = noise_covariance(Vector(0), 0.3, 0.1, 4);
    const EigenResult e = eigendecompose(scale_covariance(c, sigma));
    EXPECT_NEAR(e.eigenvalues.maxCoeff(), 1.0, 0.06);
    EXPECT_NEAR(e.eigenvalues.minCoeff(), 1.0, 0.06);
}
