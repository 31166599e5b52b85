#include "eivarx/baselines.hpp"

#include "eivarx/errors.hpp"
#include "eivarx/lagged_data.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <string>

namespace eivarx {

BaselineResult dpca(const TimeSeriesPair& series, int eta) {
    if (eta < 1) throw InvalidArgument("dpca: eta must be at least 1");
    const SampleCovariance s = sample_covariance(stack(series, eta));
    const Refinement r = refine_at_eta(s, 0.0, 0.0, Vector::Zero(eta), PipelineConfig{});
    BaselineResult out;
    out.method = "dpca";
    out.model = r.model;
    out.iterations = r.iterations;
    return out;
}

BaselineResult dipca_diag(const TimeSeriesPair& series, int eta, const PipelineConfig& config,
                          int variance_lag) {
    if (eta < 1) throw InvalidArgument("dipca_diag: eta must be at least 1");
    const int vl = variance_lag > 0 ? variance_lag : 2 * eta + 1;
    if (vl <= eta) throw InvalidArgument("dipca_diag: variance lag must exceed eta");
    const int d = vl - eta + 1;

    BaselineResult out;
    out.method = "dipca_diag";
    const SampleCovariance s_eta = sample_covariance(stack(series, eta));
    try {
        const SampleCovariance s = sample_covariance(stack(series, vl));
        const Matrix identity = Matrix::Identity(s.dim(), s.dim());
        const InnerResult white =
            alternate(s, d, identity, std::nullopt, NoiseStructure::White, config);
        const Refinement r =
            refine_at_eta(s_eta, white.variances.sigma2_ey, white.variances.sigma2_eu,
                          Vector::Zero(eta), config, NoiseStructure::White);
        out.model = r.model;
        out.sigma2_ey = white.variances.sigma2_ey;
        out.sigma2_eu = white.variances.sigma2_eu;
        out.iterations = white.iterations;
        out.converged = white.converged && r.converged;
    } catch (const DegenerateNoise&) {
        // Noise-free data: the unscaled problem is already exact.
        const Refinement r = refine_at_eta(s_eta, 0.0, 0.0, Vector::Zero(eta), config);
        out.model = r.model;
        out.sigma2_ey = 0.0;
        out.sigma2_eu = 0.0;
    }
    return out;
}

BaselineResult ols_arx(const TimeSeriesPair& series, int ny, int nu, int delay) {
    if (ny < 0 || delay < 0 || nu < delay)
        throw InvalidArgument("ols_arx: need ny >= 0 and 0 <= delay <= nu");
    if (series.u.size() != series.y.size()) throw InvalidArgument("ols_arx: u and y lengths differ");
    const Index n = series.size();
    const int start = std::max(ny, nu);
    const int p = ny + nu - delay + 1;
    const Index rows = n - start;
    if (rows <= p) throw InvalidArgument("ols_arx: too few samples for " + std::to_string(p) + " parameters");

    Matrix phi(rows, p);
    Vector target(rows);
    for (Index r = 0; r < rows; ++r) {
        const Index k = start + r;
        for (int i = 0; i < ny; ++i) phi(r, i) = -series.y(k - 1 - i);
        for (int j = delay; j <= nu; ++j) phi(r, ny + j - delay) = series.u(k - j);
        target(r) = series.y(k);
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(phi);
    if (qr.rank() < p) throw StructureError("ols_arx: rank-deficient regressor matrix");
    const Vector theta = qr.solve(target);
    const Vector resid = target - phi * theta;

    BaselineResult out;
    out.method = "ols_arx";
    out.model = DifferenceEquation(theta.head(ny), theta.tail(nu - delay + 1), delay);
    out.sigma2_ey = resid.squaredNorm() / static_cast<double>(rows - p);
    return out;
}

}  // namespace eivarx
