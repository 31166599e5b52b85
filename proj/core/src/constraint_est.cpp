#include "eivarx/constraint_est.hpp"

#include "eivarx/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <string>
#include <vector>

namespace eivarx {

Matrix ConstraintEstimate::stacked() const {
    Matrix c(a_hat.rows(), a_hat.cols() + b_hat.cols());
    c << a_hat, -b_hat;
    return c;
}

EigenResult eigendecompose(const Matrix& s) {
    if (s.rows() != s.cols()) throw InvalidArgument("eigendecompose: matrix is not square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success) throw StructureError("eigendecompose: solver failed");
    const Index n = s.rows();
    EigenResult r;
    r.eigenvalues = es.eigenvalues().reverse();
    r.eigenvectors = es.eigenvectors().rowwise().reverse();
    for (Index j = 0; j < n; ++j) {
        Index idx = 0;
        r.eigenvectors.col(j).cwiseAbs().maxCoeff(&idx);
        if (r.eigenvectors(idx, j) < 0.0) r.eigenvectors.col(j) *= -1.0;
    }
    return r;
}

EigenResult eigendecompose(const SampleCovariance& s) { return eigendecompose(s.matrix); }

ConstraintEstimate recover_constraints(const EigenResult& e, int d, const Matrix& sigma_inv_sqrt,
                                       double max_condition) {
    const Index dim = e.eigenvectors.rows();
    if (dim % 2 != 0 || dim < 2) throw InvalidArgument("recover_constraints: odd dimension");
    const int lag = static_cast<int>(dim / 2) - 1;
    if (d < 1 || d > lag + 1)
        throw InvalidArgument("recover_constraints: d = " + std::to_string(d) + " outside [1, " +
                              std::to_string(lag + 1) + "]");
    if (sigma_inv_sqrt.rows() != dim || sigma_inv_sqrt.cols() != dim)
        throw InvalidArgument("recover_constraints: covariance dimension mismatch");

    const int eta = lag - d + 1;
    const Matrix w = e.eigenvectors.rightCols(d).transpose() * sigma_inv_sqrt;

    ConstraintEstimate out;
    out.d = d;
    out.rotation.resize(d, d);
    Matrix c(d, dim);

    for (int i = 0; i < d; ++i) {
        // Column i of A is pinned to 1; A and B both vanish outside i..i+eta.
        std::vector<int> outside;
        for (int j = 0; j < i; ++j) outside.push_back(j);
        for (int j = i + eta + 1; j <= lag; ++j) outside.push_back(j);

        const Index neq = 1 + 2 * static_cast<Index>(outside.size());
        Matrix m(neq, d);
        Vector rhs = Vector::Zero(neq);
        m.row(0) = w.col(i).transpose();
        rhs(0) = 1.0;
        Index r = 1;
        for (int j : outside) m.row(r++) = w.col(j).transpose();
        for (int j : outside) m.row(r++) = w.col(lag + 1 + j).transpose();

        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Vector& sv = svd.singularValues();
        const double smin = sv(sv.size() - 1);
        if (!(smin > 0.0) || sv(0) / smin > max_condition)
            throw StructureError("recover_constraints: ill-conditioned rotation for row " +
                                 std::to_string(i) + " (wrong number of constraints?)");
        const Vector coeff = svd.solve(rhs);

        Eigen::RowVectorXd row = coeff.transpose() * w;
        const double pivot = row(i);
        if (!(std::abs(pivot) > 1e-14 * row.cwiseAbs().maxCoeff()))
            throw StructureError("recover_constraints: vanishing pivot for row " + std::to_string(i));
        row /= pivot;
        row(i) = 1.0;
        for (int j : outside) row(j) = 0.0;
        c.row(i) = row;
        out.rotation.row(i) = coeff.transpose() / pivot;
    }

    out.a_hat = c.leftCols(lag + 1);
    out.b_hat = -c.rightCols(lag + 1);
    return out;
}

ConstraintEstimate recover_constraints(const EigenResult& e, int d, const CovarianceModel& sigma,
                                       double max_condition) {
    return recover_constraints(e, d, inverse_sqrt(sigma.full()), max_condition);
}

DifferenceEquation average_coefficients(const ConstraintEstimate& c) {
    const int d = c.d;
    const int eta = c.eta_hat();
    DifferenceEquation m;
    m.delay = 0;
    m.a = Vector::Zero(eta);
    m.b = Vector::Zero(eta + 1);
    for (int i = 0; i < d; ++i) {
        for (int k = 1; k <= eta; ++k) m.a(k - 1) += c.a_hat(i, i + k);
        for (int k = 0; k <= eta; ++k) m.b(k) += c.b_hat(i, i + k);
    }
    m.a /= d;
    m.b /= d;
    return m;
}

}  // namespace eivarx
