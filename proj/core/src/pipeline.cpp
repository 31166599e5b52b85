#include "eivarx/pipeline.hpp"

#include "eivarx/errors.hpp"
#include "eivarx/nelder_mead.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace eivarx {

namespace {

int lag_of(const SampleCovariance& s) {
    if (s.dim() < 4 || s.dim() % 2 != 0)
        throw InvalidArgument("covariance dimension must be 2(L+1) with L >= 1");
    return static_cast<int>(s.dim() / 2) - 1;
}

double data_scale(const SampleCovariance& s) {
    return s.matrix.trace() / static_cast<double>(s.dim());
}

Matrix scaled(const SampleCovariance& s, const Matrix& sih) {
    const Matrix m = sih * s.matrix * sih;
    return 0.5 * (m + m.transpose());
}

double relative_change(const Vector& now, const Vector& before) {
    const double ref = std::max(1.0, now.cwiseAbs().maxCoeff());
    return (now - before).cwiseAbs().maxCoeff() / ref;
}

CovarianceModel model_from_matrix(const Matrix& sigma, int lag) {
    CovarianceModel c;
    c.lag = lag;
    c.sigma_vy_block = sigma.topLeftCorner(lag + 1, lag + 1);
    c.sigma2_eu = sigma(lag + 1, lag + 1);
    return c;
}

// Variances that put the d smallest scaled eigenvalues closest to unity,
// measured by sum(lambda - 1 - ln lambda).
std::pair<double, double> unity_seed(const SampleCovariance& s, int d, const Vector& a,
                                     std::pair<double, double> start) {
    const int lag = lag_of(s);
    const double scale = data_scale(s);
    auto deviation = [&](const Vector& x) {
        try {
            const Matrix sigma =
                noise_covariance(a, std::exp(x(0)), std::exp(x(1)), lag).full();
            const Matrix sih = inverse_sqrt(sigma);
            Eigen::SelfAdjointEigenSolver<Matrix> es(scaled(s, sih), Eigen::EigenvaluesOnly);
            const Vector tail = es.eigenvalues().head(d);
            if (!(tail.minCoeff() > 0.0)) return std::numeric_limits<double>::infinity();
            return (tail.array() - 1.0 - tail.array().log()).sum();
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    NelderMeadOptions nm;
    nm.x_tol = 1e-4;
    nm.f_tol = 1e-8;
    nm.lower = Vector::Constant(2, std::log(1e-8 * scale));
    nm.upper = Vector::Constant(2, std::log(1e4 * scale));
    Vector x0(2);
    x0 << std::log(start.first), std::log(start.second);
    const auto res = nelder_mead(deviation, x0, nm);
    if (!std::isfinite(res.f)) return start;
    return {std::exp(res.x(0)), std::exp(res.x(1))};
}

}  // namespace

void PipelineConfig::validate() const {
    if (lag < 2) throw InvalidArgument("pipeline: lag must be at least 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("pipeline: alpha must lie in (0, 1)");
    if (max_outer_iter < 1) throw InvalidArgument("pipeline: max_outer_iter must be positive");
    if (!(tol_theta > 0.0) || !(tol_var > 0.0))
        throw InvalidArgument("pipeline: tolerances must be positive");
    if (!(zero_threshold > 0.0)) throw InvalidArgument("pipeline: zero_threshold must be positive");
    if (jackknife_segments < 2) throw InvalidArgument("pipeline: need at least 2 jackknife segments");
}

InnerResult alternate(const SampleCovariance& s, int d, const Matrix& sigma0,
                      std::optional<std::pair<double, double>> start, NoiseStructure structure,
                      const PipelineConfig& config) {
    const int lag = lag_of(s);
    const double scale = data_scale(s);

    VarianceOptions vopt;
    vopt.structure = structure;
    vopt.lower = 1e-8 * scale;
    vopt.upper = 1e4 * scale;

    Matrix sigma = sigma0;
    auto var = start;
    InnerResult res;
    Vector prev_theta;
    double prev_obj = std::numeric_limits<double>::infinity();
    int increases = 0;

    for (int it = 0; it < config.max_outer_iter; ++it) {
        const Matrix sih = inverse_sqrt(sigma);
        const EigenResult eig = eigendecompose(scaled(s, sih));
        ConstraintEstimate c = recover_constraints(eig, d, sih);
        const DifferenceEquation avg = average_coefficients(c);
        const Vector a = stabilize(avg.a);

        vopt.start = var;
        const VarianceEstimate ve = estimate_variances(c, s, a, vopt);
        Matrix next = noise_covariance(a, ve.sigma2_ey, ve.sigma2_eu, lag, structure).full();

        increases = ve.objective_value > prev_obj ? increases + 1 : 0;
        if (increases >= 2) {
            next = 0.5 * (next + sigma);
            increases = 0;
        }
        prev_obj = ve.objective_value;

        Vector theta(avg.a.size() + avg.b.size());
        theta << avg.a, avg.b;
        bool settled = false;
        if (var && prev_theta.size() == theta.size()) {
            const double dv = std::max(std::abs(ve.sigma2_ey - var->first) / ve.sigma2_ey,
                                       std::abs(ve.sigma2_eu - var->second) / ve.sigma2_eu);
            settled = relative_change(theta, prev_theta) < config.tol_theta && dv < config.tol_var;
        }

        res.constraints = std::move(c);
        res.variances = ve;
        res.averaged = avg;
        res.iterations = it + 1;
        prev_theta = theta;
        var = std::make_pair(ve.sigma2_ey, ve.sigma2_eu);
        sigma = next;
        if (settled) {
            res.converged = true;
            break;
        }
    }

    res.covariance = model_from_matrix(sigma, lag);
    res.eigen = eigendecompose(scaled(s, inverse_sqrt(sigma)));
    return res;
}

InnerResult inner_iteration(const SampleCovariance& s, int d_guess, const PipelineConfig& config) {
    const int lag = lag_of(s);
    const double floor = 1e-8 * data_scale(s);

    const Matrix identity = Matrix::Identity(s.dim(), s.dim());
    const InnerResult white =
        alternate(s, d_guess, identity, std::nullopt, NoiseStructure::White, config);

    const Vector a0 = stabilize(white.averaged.a);
    const double gain = scaled_acvf_basis(a0, 0).values(0);
    const std::pair<double, double> v0{std::max(white.variances.sigma2_ey / gain, floor),
                                       std::max(white.variances.sigma2_eu, floor)};
    const auto v1 = unity_seed(s, d_guess, a0, v0);

    const Matrix sigma1 = noise_covariance(a0, v1.first, v1.second, lag).full();
    InnerResult colored =
        alternate(s, d_guess, sigma1, v1, NoiseStructure::ArxColored, config);
    colored.iterations += white.iterations;
    return colored;
}

InnerResult inner_iteration(const LaggedMatrix& z, int d_guess, const PipelineConfig& config) {
    return inner_iteration(sample_covariance(z), d_guess, config);
}

Refinement refine_at_eta(const SampleCovariance& s_eta, double sigma2_ey, double sigma2_eu,
                         const Vector& a_init, const PipelineConfig& config,
                         NoiseStructure structure) {
    const int eta = static_cast<int>(s_eta.dim() / 2) - 1;
    if (eta < 0 || s_eta.dim() % 2 != 0) throw InvalidArgument("refine_at_eta: bad dimension");
    const bool identity = !(sigma2_ey > 0.0) || !(sigma2_eu > 0.0);
    const bool fixed_sigma = identity || structure == NoiseStructure::White || eta == 0;

    Vector a = Vector::Zero(eta);
    a.head(std::min<Index>(eta, a_init.size())) = a_init.head(std::min<Index>(eta, a_init.size()));

    Refinement out;
    Vector prev;
    for (int it = 0; it < config.max_outer_iter; ++it) {
        const Matrix sigma = identity ? Matrix::Identity(s_eta.dim(), s_eta.dim())
                                      : noise_covariance(stabilize(a), sigma2_ey, sigma2_eu, eta,
                                                         structure)
                                            .full();
        Matrix sih;
        try {
            sih = inverse_sqrt(sigma);
        } catch (const InvalidArgument&) {
            // Near-unit AR roots at a wrong order make the Toeplitz block numerically singular.
            throw StructureError("refine_at_eta: noise covariance is not positive definite at eta = " +
                                 std::to_string(eta));
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(scaled(s_eta, sih));
        Vector theta = sih * es.eigenvectors().col(0);
        if (!(std::abs(theta(0)) > 1e-12 * theta.cwiseAbs().maxCoeff()))
            throw StructureError("refine_at_eta: leading parameter vanishes");
        theta /= theta(0);

        out.theta = theta;
        out.smallest_eigenvalue = es.eigenvalues()(0);
        out.iterations = it + 1;
        a = theta.segment(1, eta);
        if (fixed_sigma || (prev.size() == theta.size() &&
                            relative_change(theta, prev) < config.tol_theta)) {
            out.converged = true;
            break;
        }
        prev = theta;
    }
    out.model = DifferenceEquation::from_theta(out.theta, 0, eta, eta);
    return out;
}

Refinement refine_at_eta(const TimeSeriesPair& series, int eta_hat,
                         const VarianceEstimate& variances, const PipelineConfig& config,
                         const std::optional<Vector>& a_init) {
    if (eta_hat < 1) throw InvalidArgument("refine_at_eta: eta_hat must be at least 1");
    const SampleCovariance s = sample_covariance(stack(series, eta_hat, config.center));
    return refine_at_eta(s, variances.sigma2_ey, variances.sigma2_eu,
                         a_init.value_or(Vector::Zero(eta_hat)), config);
}

DelayEstimate estimate_delay(const LaggedMatrix& z_eta, const Refinement& refined, double sigma2_ey,
                             double sigma2_eu, const PipelineConfig& config) {
    const Vector& b = refined.model.b;
    const Index nb = b.size();
    DelayEstimate out;
    out.standard_error = Vector::Zero(nb);

    const bool noise_free = !(sigma2_ey > 0.0) || !(sigma2_eu > 0.0);
    if (noise_free) {
        const double ref = b.cwiseAbs().maxCoeff();
        for (Index m = 0; m < nb; ++m)
            if (std::abs(b(m)) > 1e-8 * ref) {
                out.delay = static_cast<int>(m);
                return out;
            }
        return out;
    }

    const Index rows = z_eta.rows();
    const int g = static_cast<int>(std::min<Index>(config.jackknife_segments, rows / 2));
    const Matrix full = z_eta.data.transpose() * z_eta.data;
    std::vector<Vector> draws;
    for (int k = 0; k < g; ++k) {
        const Index lo = rows * k / g;
        const Index hi = rows * (k + 1) / g;
        const auto seg = z_eta.data.middleRows(lo, hi - lo);
        SampleCovariance s;
        s.row_count = rows - (hi - lo);
        s.matrix = (full - seg.transpose() * seg) / static_cast<double>(s.row_count);
        s.matrix = 0.5 * (s.matrix + s.matrix.transpose()).eval();
        try {
            draws.push_back(
                refine_at_eta(s, sigma2_ey, sigma2_eu, refined.model.a, config).model.b);
        } catch (const Error&) {
        }
    }

    if (draws.size() >= 2) {
        const double n = static_cast<double>(draws.size());
        Vector mean = Vector::Zero(nb);
        for (const auto& v : draws) mean += v;
        mean /= n;
        Vector ss = Vector::Zero(nb);
        for (const auto& v : draws) ss += (v - mean).cwiseAbs2();
        out.standard_error = ((n - 1.0) / n * ss).cwiseSqrt();
    } else {
        out.standard_error.setConstant(std::numeric_limits<double>::infinity());
    }

    Index best = 0;
    double best_ratio = -1.0;
    for (Index m = 0; m < nb; ++m) {
        const double se = out.standard_error(m);
        const double ratio = se > 0.0 ? std::abs(b(m)) / se : std::numeric_limits<double>::infinity();
        if (ratio > config.zero_threshold) {
            out.delay = static_cast<int>(m);
            return out;
        }
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = m;
        }
    }
    out.delay = static_cast<int>(best);
    return out;
}

IdentificationReport identify(const TimeSeriesPair& series, const PipelineConfig& config) {
    config.validate();
    const int lag = config.lag;
    if (series.u.size() != series.y.size()) throw InvalidArgument("identify: u and y lengths differ");
    if (series.size() <= 4 * (lag + 1))
        throw InvalidArgument("identify: need more than 4(L+1) = " + std::to_string(4 * (lag + 1)) +
                              " samples, got " + std::to_string(series.size()));

    const SampleCovariance s = sample_covariance(stack(series, lag, config.center));
    const EigenResult raw = eigendecompose(s);
    const double lam_max = raw.eigenvalues(0);
    if (!(lam_max > 0.0)) throw InvalidArgument("identify: data are identically zero");

    std::map<int, InnerResult> fits;
    std::map<int, bool> degenerate;
    auto evaluate = [&](int d) -> CandidateFit {
        if (raw.eigenvalues.tail(d).maxCoeff() <= 1e-10 * lam_max) {
            InnerResult r;
            r.constraints = recover_constraints(raw, d, Matrix::Identity(s.dim(), s.dim()));
            r.averaged = average_coefficients(r.constraints);
            r.eigen = raw;
            r.converged = true;
            fits[d] = r;
            degenerate[d] = true;
            return {raw.eigenvalues, true};
        }
        InnerResult r = inner_iteration(s, d, config);
        const Vector ev = r.eigen.eigenvalues;
        fits[d] = std::move(r);
        degenerate[d] = false;
        return {ev, false};
    };

    const OrderSelection sel = select_order(evaluate, lag, s.row_count, config.alpha);
    const InnerResult& best = fits.at(sel.d_hat);
    const bool noise_free = degenerate.at(sel.d_hat);
    const int eta = sel.eta_hat;

    IdentificationReport rep;
    rep.lag = lag;
    rep.eta_hat = eta;
    rep.d_hat = sel.d_hat;
    rep.averaged = best.averaged;
    rep.tests = sel.tests;
    rep.eigenvalue_trail = sel.eigenvalue_trail;
    rep.degenerate_noise = noise_free;
    rep.variances = noise_free ? VarianceEstimate{} : best.variances;
    if (noise_free) rep.variances.converged = true;

    if (eta < 1) throw StructureError("identify: estimated order is zero");
    const LaggedMatrix z_eta = stack(series, eta, config.center);
    const SampleCovariance s_eta = sample_covariance(z_eta);
    const Refinement ref = refine_at_eta(s_eta, rep.variances.sigma2_ey, rep.variances.sigma2_eu,
                                         best.averaged.a, config);
    const DelayEstimate delay =
        estimate_delay(z_eta, ref, rep.variances.sigma2_ey, rep.variances.sigma2_eu, config);

    rep.model = ref.model;
    rep.refinement_eigenvalue = ref.smallest_eigenvalue;
    rep.delay_hat = delay.delay;
    rep.b_standard_error = delay.standard_error;
    rep.iterations = best.iterations + ref.iterations;
    rep.converged = best.converged && ref.converged;
    return rep;
}

}  // namespace eivarx
