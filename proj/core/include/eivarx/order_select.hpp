#pragma once

#include "eivarx/types.hpp"

#include <functional>
#include <vector>

namespace eivarx {

struct EigenEqualityTest {
    int d_guess = 0;
    double statistic = 0.0;
    int dof = 0;
    double critical_value = 0.0;
    double alpha = 0.05;
    bool reject = false;
    /// Candidate could not be fitted at all; statistic is NaN and reject is set.
    bool structural_failure = false;
};

/// Degrees of freedom (q-1)(q+2)/2 of the equality test on q eigenvalues.
int equality_dof(int q);

/// Upper quantile of the chi-squared distribution: P(X <= x) = p.
double chi2_quantile(double p, double dof);

/**
 * Bartlett test that the d_guess smallest entries of `eigenvalues` are equal:
 * T = M (q ln mean - sum ln lambda_j), compared with the chi2 quantile at 1 - alpha.
 */
EigenEqualityTest equality_test(const Vector& eigenvalues, int d_guess, Index row_count,
                                double alpha = 0.05);

/// What the order search needs from one fitted candidate.
struct CandidateFit {
    Vector eigenvalues;       ///< converged scaled eigenvalues, descending
    bool degenerate = false;  ///< exact zero tail; accepted without a test
};

using CandidateEvaluator = std::function<CandidateFit(int d_guess)>;

struct EigenTrailEntry {
    int d_guess = 0;
    Vector eigenvalues;
};

struct OrderSelection {
    int d_hat = 0;
    int eta_hat = 0;
    std::vector<EigenEqualityTest> tests;
    std::vector<EigenTrailEntry> eigenvalue_trail;
};

/**
 * Test d_guess = L, L-1, .., 2 and accept the first candidate whose tail is
 * not rejected. Library errors raised by the evaluator count as rejection.
 * Throws NoStructureFound when every candidate is rejected.
 */
OrderSelection select_order(const CandidateEvaluator& evaluate, int lag, Index row_count,
                            double alpha = 0.05);

}  // namespace eivarx
