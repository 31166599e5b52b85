#pragma once

#include "eivarx/lagged_data.hpp"
#include "eivarx/noise_model.hpp"
#include "eivarx/types.hpp"

namespace eivarx {

/// Spectral decomposition with eigenvalues in descending order.
struct EigenResult {
    Vector eigenvalues;
    Matrix eigenvectors;
};

/// Rows of [A_hat  -B_hat] are shifted copies of the parameter vector.
struct ConstraintEstimate {
    Matrix a_hat;     ///< d x (L+1)
    Matrix b_hat;     ///< d x (L+1)
    Matrix rotation;  ///< d x d
    int d = 0;

    int lag() const { return static_cast<int>(a_hat.cols()) - 1; }
    int eta_hat() const { return lag() - d + 1; }
    /// [A_hat  -B_hat], d x 2(L+1).
    Matrix stacked() const;
};

/// Each eigenvector's largest-magnitude entry is made positive.
EigenResult eigendecompose(const Matrix& s);
EigenResult eigendecompose(const SampleCovariance& s);

/**
 * Rotate the d smallest eigenvectors so that row i of A_hat has a 1 at
 * column i and zeros outside columns i..i+eta_hat. The matching zero band
 * of B_hat is imposed in the same least-squares solve, which keeps the
 * system regular when the leading or trailing parameters vanish.
 *
 * Throws StructureError when a per-row system is too ill-conditioned.
 */
ConstraintEstimate recover_constraints(const EigenResult& e, int d, const Matrix& sigma_inv_sqrt,
                                       double max_condition = 1e10);
ConstraintEstimate recover_constraints(const EigenResult& e, int d, const CovarianceModel& sigma,
                                       double max_condition = 1e10);

/// Average the shifted rows into a = a_1..a_eta_hat, b = b_0..b_eta_hat (delay 0).
DifferenceEquation average_coefficients(const ConstraintEstimate& c);

}  // namespace eivarx
