#include "eivarx/variance_est.hpp"

#include "eivarx/errors.hpp"
#include "eivarx/nelder_mead.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace eivarx {

namespace {

Matrix toeplitz(const Vector& first, Index n) {
    Matrix t(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) t(i, j) = first(std::abs(i - j));
    return t;
}

Acvf structure_basis(const Vector& a, int lag, NoiseStructure structure) {
    if (structure == NoiseStructure::White) {
        Acvf white{Vector::Zero(lag + 1)};
        white.values(0) = 1.0;
        return white;
    }
    return scaled_acvf_basis(a, lag);
}

}  // namespace

Matrix compute_residuals(const ConstraintEstimate& c, const LaggedMatrix& z) {
    if (z.cols() != c.a_hat.cols() + c.b_hat.cols())
        throw InvalidArgument("compute_residuals: lag mismatch between constraints and data");
    return z.data * c.stacked().transpose();
}

VarianceObjective::VarianceObjective(const ConstraintEstimate& c, const Acvf& basis, Matrix scatter,
                                     Index rows)
    : scatter_(std::move(scatter)), rows_(rows) {
    const Index n = c.a_hat.cols();
    if (basis.max_lag() < n - 1) throw InvalidArgument("VarianceObjective: ACVF basis too short");
    if (scatter_.rows() != c.d || scatter_.cols() != c.d)
        throw InvalidArgument("VarianceObjective: scatter must be d x d");
    p_ = c.a_hat * toeplitz(basis.values, n) * c.a_hat.transpose();
    p_ = 0.5 * (p_ + p_.transpose()).eval();
    q_ = c.b_hat * c.b_hat.transpose();
}

double VarianceObjective::value(double sigma2_ey, double sigma2_eu) const {
    const Matrix sr = sigma2_ey * p_ + sigma2_eu * q_;
    Eigen::LLT<Matrix> llt(sr);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const Vector diag = llt.matrixLLT().diagonal();
    if ((diag.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    const double logdet = 2.0 * diag.array().log().sum();
    const double quad = llt.solve(scatter_).trace();
    return static_cast<double>(rows_) * logdet + quad;
}

Eigen::Vector2d VarianceObjective::gradient_log(double sigma2_ey, double sigma2_eu) const {
    const Matrix sr = sigma2_ey * p_ + sigma2_eu * q_;
    Eigen::LLT<Matrix> llt(sr);
    if (llt.info() != Eigen::Success)
        throw DegenerateNoise("residual covariance is not positive definite");
    const Matrix sinv = llt.solve(Matrix::Identity(sr.rows(), sr.cols()));
    const Matrix w = sinv * scatter_ * sinv;
    const double m = static_cast<double>(rows_);
    Eigen::Vector2d g;
    g(0) = sigma2_ey * (m * (sinv * p_).trace() - (w * p_).trace());
    g(1) = sigma2_eu * (m * (sinv * q_).trace() - (w * q_).trace());
    return g;
}

double negative_log_likelihood(double sigma2_ey, double sigma2_eu, const ConstraintEstimate& c,
                               const Acvf& acvf_basis, const Matrix& residuals) {
    if (!(sigma2_ey > 0.0) || !(sigma2_eu > 0.0))
        throw InvalidArgument("negative_log_likelihood: variances must be positive");
    VarianceObjective obj(c, acvf_basis, residuals.transpose() * residuals, residuals.rows());
    const double f = obj.value(sigma2_ey, sigma2_eu);
    if (!std::isfinite(f)) throw DegenerateNoise("residual covariance is not positive definite");
    return f;
}

VarianceEstimate estimate_variances(const ConstraintEstimate& c, const SampleCovariance& s,
                                    const Vector& a_current, const VarianceOptions& options) {
    const int lag = c.lag();
    if (s.dim() != 2 * (lag + 1)) throw InvalidArgument("estimate_variances: lag mismatch");

    const Acvf basis = structure_basis(a_current, lag, options.structure);
    const Matrix cm = c.stacked();
    const double m = static_cast<double>(s.row_count);
    Matrix scatter = m * (cm * s.matrix * cm.transpose());
    scatter = 0.5 * (scatter + scatter.transpose()).eval();

    const double data_scale = s.matrix.trace() / static_cast<double>(s.dim());
    if (!(scatter.trace() / m > 1e-12 * data_scale * (cm * cm.transpose()).trace()))
        throw DegenerateNoise("estimate_variances: constraint residuals vanish");

    VarianceObjective obj(c, basis, scatter, s.row_count);

    double s1 = 0.0;
    double s2 = 0.0;
    if (options.start) {
        s1 = options.start->first;
        s2 = options.start->second;
    } else {
        const double half = scatter.trace() / (2.0 * m);
        s1 = half / std::max(obj.p().trace(), 1e-300);
        s2 = half / std::max(obj.q().trace(), 1e-300);
    }
    const double tiny = std::numeric_limits<double>::min();
    s1 = std::max(s1, tiny);
    s2 = std::max(s2, tiny);

    NelderMeadOptions nm;
    nm.max_iter = options.max_iter;
    nm.x_tol = options.tol;
    nm.f_tol = options.tol;
    if (options.lower > 0.0 || options.upper > 0.0) {
        const double lo = options.lower > 0.0 ? std::log(options.lower) : -700.0;
        const double hi = options.upper > 0.0 ? std::log(options.upper) : 700.0;
        nm.lower = Vector::Constant(2, lo);
        nm.upper = Vector::Constant(2, hi);
    }

    Vector x0(2);
    x0 << std::log(s1), std::log(s2);
    const auto res = nelder_mead(
        [&](const Vector& x) { return obj.value(std::exp(x(0)), std::exp(x(1))); }, x0, nm);

    VarianceEstimate v;
    v.sigma2_ey = std::exp(res.x(0));
    v.sigma2_eu = std::exp(res.x(1));
    v.objective_value = res.f;
    v.iterations = res.iterations;
    v.converged = res.converged;
    if (!v.converged && std::isfinite(res.f)) {
        const auto g = obj.gradient_log(v.sigma2_ey, v.sigma2_eu);
        v.converged = g.norm() < options.tol;
    }
    if (!std::isfinite(res.f))
        throw DegenerateNoise("estimate_variances: no admissible variance pair");
    return v;
}

VarianceEstimate estimate_variances(const ConstraintEstimate& c, const LaggedMatrix& z,
                                    const Vector& a_current, const VarianceOptions& options) {
    return estimate_variances(c, sample_covariance(z), a_current, options);
}

}  // namespace eivarx
