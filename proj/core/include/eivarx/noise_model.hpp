#pragma once

#include "eivarx/types.hpp"

#include <complex>

namespace eivarx {

/// Autocovariance sequence sigma_vv[0..max_lag].
struct Acvf {
    Vector values;

    int max_lag() const { return static_cast<int>(values.size()) - 1; }
    /// Symmetric lookup: at(-l) == at(l).
    double at(int lag) const;
};

/// Lagged noise covariance blockdiag(Toeplitz(acvf), sigma2_eu * I).
struct CovarianceModel {
    Matrix sigma_vy_block;
    double sigma2_eu = 0.0;
    int lag = 0;

    Matrix full() const;
};

enum class NoiseStructure {
    ArxColored,  ///< output noise shares the AR polynomial of the system
    White,       ///< output noise treated as white (diagonal covariance)
};

/// Roots of z^n + a_1 z^(n-1) + ... + a_n via the companion matrix.
Eigen::VectorXcd ar_roots(const Vector& a);

/// All roots strictly inside |z| < 1 - margin.
bool is_stable(const Vector& a, double margin = 1e-8);

/// Pull roots with |z| > radius onto the circle of that radius.
Vector stabilize(const Vector& a, double radius = 0.999);

/// ACVF of the AR process A(q^-1) v = e, var(e) = sigma2_ey, via Yule-Walker.
Acvf yule_walker_acvf(const Vector& a, double sigma2_ey, int max_lag);

/// Yule-Walker ACVF for unit driving variance.
Acvf scaled_acvf_basis(const Vector& a, int max_lag);

CovarianceModel build_covariance(const Acvf& acvf, double sigma2_eu, int lag);

/// Noise covariance for lag L under the chosen output-noise structure.
/// For NoiseStructure::White, sigma2_y is the output-noise variance itself.
CovarianceModel noise_covariance(const Vector& a, double sigma2_y, double sigma2_eu, int lag,
                                 NoiseStructure structure = NoiseStructure::ArxColored);

}  // namespace eivarx
