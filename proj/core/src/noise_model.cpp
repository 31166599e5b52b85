#include "eivarx/noise_model.hpp"

#include "eivarx/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

namespace eivarx {

double Acvf::at(int lag) const {
    const int l = std::abs(lag);
    if (l > max_lag()) throw InvalidArgument("Acvf::at: lag " + std::to_string(lag) + " out of range");
    return values(l);
}

Matrix CovarianceModel::full() const {
    const Index n = sigma_vy_block.rows();
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = sigma_vy_block;
    m.bottomRightCorner(n, n).diagonal().setConstant(sigma2_eu);
    return m;
}

Eigen::VectorXcd ar_roots(const Vector& a) {
    const Index n = a.size();
    if (n == 0) return Eigen::VectorXcd();
    Matrix companion = Matrix::Zero(n, n);
    companion.row(0) = -a.transpose();
    for (Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Matrix> solver(companion, false);
    return solver.eigenvalues();
}

bool is_stable(const Vector& a, double margin) {
    if (a.size() == 0) return true;
    if (!a.allFinite()) return false;
    return ar_roots(a).cwiseAbs().maxCoeff() < 1.0 - margin;
}

Vector stabilize(const Vector& a, double radius) {
    if (a.size() == 0) return a;
    Eigen::VectorXcd roots = ar_roots(a);
    bool changed = false;
    for (Index i = 0; i < roots.size(); ++i) {
        const double r = std::abs(roots(i));
        if (r > radius) {
            roots(i) *= radius / r;
            changed = true;
        }
    }
    if (!changed) return a;

    std::vector<std::complex<double>> poly{1.0};
    for (Index i = 0; i < roots.size(); ++i) {
        std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k];
            next[k + 1] -= poly[k] * roots(i);
        }
        poly = std::move(next);
    }
    Vector out(a.size());
    for (Index i = 0; i < a.size(); ++i) out(i) = poly[static_cast<std::size_t>(i) + 1].real();
    return out;
}

Acvf yule_walker_acvf(const Vector& a, double sigma2_ey, int max_lag) {
    if (sigma2_ey < 0.0) throw InvalidArgument("yule_walker_acvf: negative variance");
    if (max_lag < 0) throw InvalidArgument("yule_walker_acvf: negative max_lag");
    if (!is_stable(a)) throw UnstableModel("yule_walker_acvf: AR polynomial is not stable");

    const int n = static_cast<int>(a.size());
    Vector poly(n + 1);
    poly(0) = 1.0;
    poly.tail(n) = a;

    // sum_k a_k g[|l-k|] = sigma2 * [l == 0], l = 0..n
    Matrix m = Matrix::Zero(n + 1, n + 1);
    for (int l = 0; l <= n; ++l)
        for (int k = 0; k <= n; ++k) m(l, std::abs(l - k)) += poly(k);
    Vector rhs = Vector::Zero(n + 1);
    rhs(0) = sigma2_ey;

    Eigen::PartialPivLU<Matrix> lu(m);
    if (!(lu.rcond() > 1e-14)) throw UnstableModel("yule_walker_acvf: singular Yule-Walker system");
    const Vector g0 = lu.solve(rhs);

    const int len = std::max(max_lag, n) + 1;
    Vector g(len);
    g.head(n + 1) = g0;
    for (int l = n + 1; l < len; ++l) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) acc -= poly(k) * g(l - k);
        g(l) = acc;
    }
    return Acvf{g.head(max_lag + 1)};
}

Acvf scaled_acvf_basis(const Vector& a, int max_lag) { return yule_walker_acvf(a, 1.0, max_lag); }

CovarianceModel build_covariance(const Acvf& acvf, double sigma2_eu, int lag) {
    if (lag < 0) throw InvalidArgument("build_covariance: negative lag");
    if (acvf.max_lag() < lag)
        throw InvalidArgument("build_covariance: ACVF has max lag " + std::to_string(acvf.max_lag()) +
                              " < " + std::to_string(lag));
    if (sigma2_eu < 0.0) throw InvalidArgument("build_covariance: negative input-noise variance");

    CovarianceModel c;
    c.lag = lag;
    c.sigma2_eu = sigma2_eu;
    c.sigma_vy_block.resize(lag + 1, lag + 1);
    for (int i = 0; i <= lag; ++i)
        for (int j = 0; j <= lag; ++j) c.sigma_vy_block(i, j) = acvf.values(std::abs(i - j));
    return c;
}

CovarianceModel noise_covariance(const Vector& a, double sigma2_y, double sigma2_eu, int lag,
                                 NoiseStructure structure) {
    if (structure == NoiseStructure::White) {
        Acvf white{Vector::Zero(lag + 1)};
        white.values(0) = sigma2_y;
        return build_covariance(white, sigma2_eu, lag);
    }
    return build_covariance(yule_walker_acvf(a, sigma2_y, lag), sigma2_eu, lag);
}

}  // namespace eivarx
