#include "support.hpp"

#include <gtest/gtest.h>

using namespace eivarx;
using namespace eivarx::testing;

namespace {

PipelineConfig with_lag(int lag) {
    PipelineConfig c;
    c.lag = lag;
    return c;
}

}  // namespace

TEST(Identify, NoiseFreeExactRecovery) {
    const TimeSeriesPair s = make_dataset(example1_model(), 1023, {0.0, 0.0}, 1);
    const IdentificationReport r = identify(s, with_lag(5));
    EXPECT_TRUE(r.degenerate_noise);
    EXPECT_EQ(r.eta_hat, 2);
    EXPECT_EQ(r.d_hat, 4);
    EXPECT_EQ(r.delay_hat, 1);
    EXPECT_NEAR(r.model.a(0), -1.5, 1e-8);
    EXPECT_NEAR(r.model.a(1), 0.7, 1e-8);
    EXPECT_NEAR(r.model.b(0), 0.0, 1e-8);
    EXPECT_NEAR(r.model.b(1), 1.0, 1e-8);
    EXPECT_NEAR(r.model.b(2), 0.5, 1e-8);
    EXPECT_EQ(r.variances.sigma2_ey, 0.0);
    EXPECT_EQ(r.variances.sigma2_eu, 0.0);
}

TEST(Identify, Example1RecoversOrderAndDelay) {
    const IdentificationReport r = identify(example1_data(1023, 1001), with_lag(5));
    EXPECT_EQ(r.eta_hat, 2);
    EXPECT_EQ(r.d_hat, 4);
    EXPECT_EQ(r.delay_hat, 1);
    EXPECT_EQ(r.eta_hat, r.lag - r.d_hat + 1);
    EXPECT_FALSE(r.degenerate_noise);
    EXPECT_NEAR(r.model.a(0), -1.5, 0.05);
    EXPECT_NEAR(r.model.a(1), 0.7, 0.05);
    EXPECT_NEAR(r.model.b(1), 1.0, 0.1);
    EXPECT_NEAR(r.variances.sigma2_ey, 0.2, 0.06);
    EXPECT_NEAR(r.variances.sigma2_eu, 0.1, 0.06);
    EXPECT_NEAR(r.refinement_eigenvalue, 1.0, 0.1);
    ASSERT_EQ(r.tests.size(), 2u);
    EXPECT_EQ(r.tests[0].dof, 14);
    EXPECT_EQ(r.tests[1].dof, 9);
    EXPECT_EQ(r.b_standard_error.size(), 3);
}

TEST(Identify, LongLagStillFindsOrderTwo) {
    int hits = 0;
    for (std::uint64_t seed = 1000; seed < 1020; ++seed) {
        IdentificationReport r;
        try {
            r = identify(example1_data(1023, seed), with_lag(15));
        } catch (const StructureError&) {
            continue;
        }
        EXPECT_EQ(r.eta_hat, 15 - r.d_hat + 1);
        EXPECT_EQ(r.tests.front().dof, equality_dof(15));
        hits += r.eta_hat == 2 && r.d_hat == 14;
    }
    EXPECT_GE(hits, 16);
}

TEST(Identify, Example2RecoversOrderThreeAndDelayTwo) {
    const IdentificationReport r = identify(example2_data(4095, 1003), with_lag(6));
    EXPECT_EQ(r.eta_hat, 3);
    EXPECT_EQ(r.delay_hat, 2);
    ASSERT_EQ(r.tests.size(), 3u);
    EXPECT_EQ(r.tests[0].dof, 20);
    EXPECT_EQ(r.tests[1].dof, 14);
    EXPECT_EQ(r.tests[2].dof, 9);
    EXPECT_NEAR(r.model.b(2), 1.0, 0.1);
}

TEST(Identify, DeterministicBitForBit) {
    const TimeSeriesPair s = example1_data(1023, 77);
    const IdentificationReport a = identify(s, with_lag(5));
    const IdentificationReport b = identify(s, with_lag(5));
    EXPECT_EQ(a.model.a, b.model.a);
    EXPECT_EQ(a.model.b, b.model.b);
    EXPECT_EQ(a.variances.sigma2_ey, b.variances.sigma2_ey);
    EXPECT_EQ(a.variances.sigma2_eu, b.variances.sigma2_eu);
    EXPECT_EQ(a.refinement_eigenvalue, b.refinement_eigenvalue);
}

TEST(Identify, RefinementIsAFixedPoint) {
    const TimeSeriesPair s = example1_data(1023, 78);
    const PipelineConfig cfg = with_lag(5);
    const IdentificationReport r = identify(s, cfg);
    const Refinement again = refine_at_eta(s, r.eta_hat, r.variances, cfg, r.model.a);
    const Vector before = r.model.theta();
    const Vector after = DifferenceEquation::from_theta(again.theta, 0, r.eta_hat, r.eta_hat).theta();
    EXPECT_LT((after - before).norm() / before.norm(), 1e-5);
    EXPECT_NEAR(again.smallest_eigenvalue, r.refinement_eigenvalue, 1e-6);
}

TEST(Identify, InnerIterationConverges) {
    const LaggedMatrix z = stack(example1_data(1023, 79), 5);
    const InnerResult inner = inner_iteration(z, 4, with_lag(5));
    EXPECT_TRUE(inner.converged);
    EXPECT_EQ(inner.constraints.d, 4);
    EXPECT_NEAR(inner.averaged.a(0), -1.5, 0.1);
    const Vector tail = inner.eigen.eigenvalues.tail(4);
    EXPECT_GT(tail.minCoeff(), 0.8);
    EXPECT_LT(tail.maxCoeff(), 1.2);
}

TEST(Identify, Preconditions) {
    EXPECT_THROW(with_lag(1).validate(), InvalidArgument);
    PipelineConfig bad = with_lag(5);
    bad.alpha = 1.5;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    const TimeSeriesPair tiny = example1_data(20, 1);
    EXPECT_THROW(identify(tiny, with_lag(5)), InvalidArgument);
}
