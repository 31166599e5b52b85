#pragma once

#include "eivarx/pipeline.hpp"
#include "eivarx/types.hpp"

#include <optional>
#include <string>

namespace eivarx {

struct BaselineResult {
    std::string method;
    DifferenceEquation model;
    std::optional<double> sigma2_ey;
    std::optional<double> sigma2_eu;
    int iterations = 0;
    bool converged = true;
};

/// Smallest eigenvector of the unscaled covariance at lag eta (b_0..b_eta, delay 0).
BaselineResult dpca(const TimeSeriesPair& series, int eta);

/**
 * Iterative PCA with a diagonal noise covariance: variances from the white
 * structure at lag `variance_lag` (default 2 eta + 1), then the smallest
 * eigenvector at lag eta under that diagonal scaling.
 */
BaselineResult dipca_diag(const TimeSeriesPair& series, int eta, const PipelineConfig& config = {},
                          int variance_lag = 0);

/// Ordinary least squares ARX with given orders and delay; sigma2_ey is the residual variance.
BaselineResult ols_arx(const TimeSeriesPair& series, int ny, int nu, int delay);

}  // namespace eivarx
