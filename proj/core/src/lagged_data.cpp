#include "eivarx/lagged_data.hpp"

#include "eivarx/errors.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace eivarx {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

LaggedMatrix stack(const Vector& y, const Vector& u, int lag, bool center) {
    if (lag < 0) throw InvalidArgument("stack: negative lag");
    if (y.size() != u.size()) throw InvalidArgument("stack: y and u lengths differ");
    const Index n = y.size();
    if (n <= lag)
        throw InvalidArgument("stack: insufficient samples (" + std::to_string(n) + ") for lag " +
                              std::to_string(lag));

    const Vector yc = center ? Vector(y.array() - y.mean()) : y;
    const Vector uc = center ? Vector(u.array() - u.mean()) : u;

    LaggedMatrix z;
    z.lag = lag;
    z.data.resize(n - lag, 2 * (lag + 1));
    for (Index t = 0; t < n - lag; ++t) {
        const Index k = lag + t;
        for (int j = 0; j <= lag; ++j) {
            z.data(t, j) = yc(k - j);
            z.data(t, lag + 1 + j) = uc(k - j);
        }
    }
    return z;
}

LaggedMatrix stack(const TimeSeriesPair& series, int lag, bool center) {
    return stack(series.y, series.u, lag, center);
}

SampleCovariance sample_covariance(const LaggedMatrix& z) {
    if (z.rows() == 0) throw InvalidArgument("sample_covariance: empty lagged matrix");
    SampleCovariance s;
    s.row_count = z.rows();
    Matrix m = Matrix::Zero(z.cols(), z.cols());
    m.selfadjointView<Eigen::Lower>().rankUpdate(z.data.transpose());
    m = m.selfadjointView<Eigen::Lower>();
    s.matrix = symmetrized(m / static_cast<double>(z.rows()));
    return s;
}

Matrix inverse_sqrt(const Matrix& spd, double relative_floor) {
    if (spd.rows() != spd.cols()) throw InvalidArgument("inverse_sqrt: matrix is not square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(spd);
    if (es.info() != Eigen::Success) throw InvalidArgument("inverse_sqrt: eigendecomposition failed");
    const Vector& w = es.eigenvalues();
    const double wmax = w.maxCoeff();
    if (!(wmax > 0.0) || !(w.minCoeff() > relative_floor * wmax))
        throw InvalidArgument("inverse_sqrt: matrix is not positive definite");
    const Matrix& q = es.eigenvectors();
    return symmetrized(q * w.cwiseInverse().cwiseSqrt().asDiagonal() * q.transpose());
}

SampleCovariance scale_covariance(const SampleCovariance& s, const Matrix& sigma) {
    if (sigma.rows() != s.dim() || sigma.cols() != s.dim())
        throw InvalidArgument("scale_covariance: dimension mismatch");
    const Matrix sih = inverse_sqrt(sigma);
    return SampleCovariance{symmetrized(sih * s.matrix * sih), s.row_count};
}

SampleCovariance scale_covariance(const SampleCovariance& s, const CovarianceModel& sigma) {
    return scale_covariance(s, sigma.full());
}

}  // namespace eivarx
