#include "eivarx/types.hpp"

#include "eivarx/errors.hpp"

#include <cmath>
#include <string>

namespace eivarx {

Vector DifferenceEquation::b_full() const {
    Vector full = Vector::Zero(nu() + 1);
    for (Index j = 0; j < b.size(); ++j) full(delay + j) = b(j);
    return full;
}

Vector DifferenceEquation::theta() const {
    const int n = eta();
    Vector t = Vector::Zero(2 * (n + 1));
    t(0) = 1.0;
    for (int i = 0; i < ny(); ++i) t(1 + i) = a(i);
    const Vector bf = b_full();
    for (Index j = 0; j < bf.size(); ++j) t(n + 1 + j) = -bf(j);
    return t;
}

DifferenceEquation DifferenceEquation::from_theta(const Vector& theta, int delay, int ny, int nu) {
    if (delay < 0 || ny < 0 || nu < delay)
        throw InvalidArgument("from_theta: need 0 <= delay <= nu and ny >= 0");
    const int n = ny > nu ? ny : nu;
    if (theta.size() != 2 * (n + 1))
        throw InvalidArgument("from_theta: theta has length " + std::to_string(theta.size()) +
                              ", expected " + std::to_string(2 * (n + 1)));
    const double t0 = theta(0);
    if (t0 == 0.0 || !std::isfinite(t0)) throw InvalidArgument("from_theta: theta[0] is zero");
    DifferenceEquation m;
    m.delay = delay;
    m.a = theta.segment(1, ny) / t0;
    m.b.resize(nu - delay + 1);
    for (int j = delay; j <= nu; ++j) m.b(j - delay) = -theta(n + 1 + j) / t0;
    return m;
}

void DifferenceEquation::validate() const {
    if (b.size() == 0) throw InvalidArgument("model: b must have at least one coefficient");
    if (delay < 0) throw InvalidArgument("model: delay must be non-negative");
    if (!a.allFinite() || !b.allFinite()) throw InvalidArgument("model: non-finite coefficient");
}

}  // namespace eivarx
