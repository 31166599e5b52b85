#pragma once

#include "eivarx/constraint_est.hpp"
#include "eivarx/lagged_data.hpp"
#include "eivarx/noise_model.hpp"
#include "eivarx/order_select.hpp"
#include "eivarx/types.hpp"
#include "eivarx/variance_est.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace eivarx {

struct PipelineConfig {
    int lag = 5;
    double alpha = 0.05;
    int max_outer_iter = 100;
    double tol_theta = 1e-6;
    double tol_var = 1e-6;
    double zero_threshold = 2.0;
    std::uint64_t seed = 0;  ///< recorded only; the pipeline is deterministic
    bool center = false;
    int jackknife_segments = 20;

    void validate() const;
};

/// Converged state of the alternation for one d_guess.
struct InnerResult {
    ConstraintEstimate constraints;
    VarianceEstimate variances;
    DifferenceEquation averaged;  ///< averaged coefficients of the last iterate
    CovarianceModel covariance;   ///< noise covariance the final eigenvalues are scaled by
    EigenResult eigen;            ///< of the covariance scaled by `covariance`
    int iterations = 0;
    bool converged = false;
};

/**
 * Alternate constraint recovery and variance estimation from `sigma0` under
 * a fixed noise structure until coefficients and variances settle.
 */
InnerResult alternate(const SampleCovariance& s, int d, const Matrix& sigma0,
                      std::optional<std::pair<double, double>> start, NoiseStructure structure,
                      const PipelineConfig& config);

/**
 * Full inner loop for one d_guess: start from the identity with a white
 * output-noise structure, re-seed the colored-noise variances so the tail
 * eigenvalues sit at unity, then alternate with the ARX noise structure.
 */
InnerResult inner_iteration(const SampleCovariance& s, int d_guess, const PipelineConfig& config);
InnerResult inner_iteration(const LaggedMatrix& z, int d_guess, const PipelineConfig& config);

struct Refinement {
    Vector theta;  ///< normalised, theta[0] == 1
    DifferenceEquation model;
    double smallest_eigenvalue = 0.0;
    int iterations = 0;
    bool converged = false;
};

/**
 * Known-order fixed point at L = eta_hat: scale by the noise covariance built
 * from the current AR estimate, take the smallest eigenvector and map it back.
 * Zero variances select the identity scaling.
 */
Refinement refine_at_eta(const SampleCovariance& s_eta, double sigma2_ey, double sigma2_eu,
                         const Vector& a_init, const PipelineConfig& config,
                         NoiseStructure structure = NoiseStructure::ArxColored);
Refinement refine_at_eta(const TimeSeriesPair& series, int eta_hat,
                         const VarianceEstimate& variances, const PipelineConfig& config,
                         const std::optional<Vector>& a_init = std::nullopt);

struct DelayEstimate {
    int delay = 0;
    Vector standard_error;  ///< jackknife SE of b_0..b_eta
};

/// Smallest m whose |b_m| exceeds zero_threshold jackknife standard errors.
DelayEstimate estimate_delay(const LaggedMatrix& z_eta, const Refinement& refined, double sigma2_ey,
                             double sigma2_eu, const PipelineConfig& config);

struct IdentificationReport {
    int lag = 0;
    int eta_hat = 0;
    int d_hat = 0;
    int delay_hat = 0;
    DifferenceEquation model;     ///< refined; n_y = eta_hat, b = b_0..b_eta_hat, delay 0
    DifferenceEquation averaged;  ///< from the stacked-lag stage
    Vector b_standard_error;
    VarianceEstimate variances;
    std::vector<EigenTrailEntry> eigenvalue_trail;
    std::vector<EigenEqualityTest> tests;
    double refinement_eigenvalue = 0.0;
    int iterations = 0;
    bool converged = false;
    bool degenerate_noise = false;
};

/// Order, delay, noise variances and coefficients from measured data.
IdentificationReport identify(const TimeSeriesPair& series, const PipelineConfig& config);

}  // namespace eivarx
