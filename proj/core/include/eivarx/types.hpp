#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

namespace eivarx {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/**
 * SISO difference equation
 *
 *   y[k] + a_1 y[k-1] + ... + a_ny y[k-ny] = b_D u[k-D] + ... + b_nu u[k-nu]
 *
 * `a` holds a_1..a_ny (a_0 = 1 is implicit), `b` holds b_D..b_nu.
 */
struct DifferenceEquation {
    Vector a;
    Vector b;
    int delay = 0;

    DifferenceEquation() = default;
    DifferenceEquation(Vector a_, Vector b_, int delay_ = 0)
        : a(std::move(a_)), b(std::move(b_)), delay(delay_) {}

    int ny() const { return static_cast<int>(a.size()); }
    int nu() const { return delay + static_cast<int>(b.size()) - 1; }
    int eta() const { return ny() > nu() ? ny() : nu(); }

    /// b padded with leading zeros so entry j is the coefficient of u[k-j], j = 0..nu.
    Vector b_full() const;

    /// Parameter vector of length 2(eta+1) matching the lagged layout
    /// [y[k]..y[k-eta], u[k]..u[k-eta]]: [1, a, 0.., 0..(delay), -b, 0..].
    Vector theta() const;

    /// Inverse of theta(); theta need not be normalised.
    static DifferenceEquation from_theta(const Vector& theta, int delay, int ny, int nu);

    /// Throws InvalidArgument on empty b, negative delay or non-finite entries.
    void validate() const;
};

struct NoiseSpec {
    double sigma2_ey = 0.0;
    double sigma2_eu = 0.0;
};

struct TimeSeriesPair {
    Vector u;
    Vector y;
    std::optional<Vector> u_star;
    std::optional<Vector> y_star;
    std::uint64_t seed = 0;

    Index size() const { return y.size(); }
};

}  // namespace eivarx
