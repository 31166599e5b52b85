#pragma once

#include "eivarx/constraint_est.hpp"
#include "eivarx/lagged_data.hpp"
#include "eivarx/noise_model.hpp"

#include <optional>
#include <utility>

namespace eivarx {

struct VarianceEstimate {
    double sigma2_ey = 0.0;
    double sigma2_eu = 0.0;
    double objective_value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Residuals r[k] = [A_hat -B_hat] z_L[k], one row per stacked sample.
Matrix compute_residuals(const ConstraintEstimate& c, const LaggedMatrix& z);

/**
 * Negative log-likelihood of the constraint residuals
 *
 *   f = M log|S_r| + tr(S_r^{-1} R),  S_r = s_ey P + s_eu Q,
 *
 * with P = A_hat T A_hat^T (T the Toeplitz of the unit-variance ACVF basis),
 * Q = B_hat B_hat^T and R the residual scatter matrix (sum of r r^T).
 */
class VarianceObjective {
public:
    VarianceObjective(const ConstraintEstimate& c, const Acvf& basis, Matrix scatter, Index rows);

    /// Returns +inf when S_r is not positive definite.
    double value(double sigma2_ey, double sigma2_eu) const;
    /// Gradient with respect to (log sigma2_ey, log sigma2_eu).
    Eigen::Vector2d gradient_log(double sigma2_ey, double sigma2_eu) const;

    const Matrix& p() const { return p_; }
    const Matrix& q() const { return q_; }
    const Matrix& scatter() const { return scatter_; }
    Index rows() const { return rows_; }

private:
    Matrix p_;
    Matrix q_;
    Matrix scatter_;
    Index rows_;
};

/// Throws DegenerateNoise when the residual covariance is not SPD.
double negative_log_likelihood(double sigma2_ey, double sigma2_eu, const ConstraintEstimate& c,
                               const Acvf& acvf_basis, const Matrix& residuals);

struct VarianceOptions {
    int max_iter = 500;
    double tol = 1e-8;
    std::optional<std::pair<double, double>> start;  ///< warm start; method-of-moments seed if empty
    double lower = 0.0;                              ///< box on both variances, 0 = none
    double upper = 0.0;                              ///< 0 = none
    NoiseStructure structure = NoiseStructure::ArxColored;
};

/**
 * Minimise the residual likelihood over (log sigma2_ey, log sigma2_eu) with the
 * AR part of the noise covariance frozen at a_current. For
 * NoiseStructure::White, sigma2_ey is the output-noise variance itself.
 */
VarianceEstimate estimate_variances(const ConstraintEstimate& c, const SampleCovariance& s,
                                    const Vector& a_current, const VarianceOptions& options = {});
VarianceEstimate estimate_variances(const ConstraintEstimate& c, const LaggedMatrix& z,
                                    const Vector& a_current, const VarianceOptions& options = {});

}  // namespace eivarx
