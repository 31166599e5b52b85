#pragma once

#include "eivarx/noise_model.hpp"
#include "eivarx/types.hpp"

namespace eivarx {

/// Rows are [y[k], y[k-1], .., y[k-L], u[k], u[k-1], .., u[k-L]] for k = L..N-1.
struct LaggedMatrix {
    Matrix data;
    int lag = 0;

    Index rows() const { return data.rows(); }
    Index cols() const { return data.cols(); }
};

struct SampleCovariance {
    Matrix matrix;
    Index row_count = 0;

    Index dim() const { return matrix.rows(); }
};

LaggedMatrix stack(const Vector& y, const Vector& u, int lag, bool center = false);
LaggedMatrix stack(const TimeSeriesPair& series, int lag, bool center = false);

/// (1 / rows) Z^T Z, symmetrised.
SampleCovariance sample_covariance(const LaggedMatrix& z);

/// Symmetric inverse square root; throws InvalidArgument unless SPD.
Matrix inverse_sqrt(const Matrix& spd, double relative_floor = 1e-12);

/// sigma^{-1/2} S sigma^{-1/2}.
SampleCovariance scale_covariance(const SampleCovariance& s, const Matrix& sigma);
SampleCovariance scale_covariance(const SampleCovariance& s, const CovarianceModel& sigma);

}  // namespace eivarx
