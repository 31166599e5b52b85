#include "eivarx/signal_gen.hpp"

#include "eivarx/errors.hpp"
#include "eivarx/noise_model.hpp"
#include "eivarx/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace eivarx {

namespace {

// Maximal-length Fibonacci taps, index = register length.
const std::array<std::vector<int>, 32> kTaps = {{
    {}, {},
    {2, 1}, {3, 2}, {4, 3}, {5, 3}, {6, 5}, {7, 6}, {8, 6, 5, 4}, {9, 5},
    {10, 7}, {11, 9}, {12, 11, 10, 4}, {13, 12, 11, 8}, {14, 13, 12, 2}, {15, 14},
    {16, 15, 13, 4}, {17, 14}, {18, 11}, {19, 18, 17, 14}, {20, 17}, {21, 19},
    {22, 21}, {23, 18}, {24, 23, 22, 17}, {25, 22}, {26, 6, 2, 1}, {27, 5, 2, 1},
    {28, 25}, {29, 27}, {30, 6, 4, 1}, {31, 28},
}};

}  // namespace

const std::vector<int>& prbs_taps(int register_length) {
    if (register_length < 2 || register_length > 31)
        throw InvalidArgument("PRBS register length must be in [2, 31], got " +
                              std::to_string(register_length));
    return kTaps[static_cast<std::size_t>(register_length)];
}

Vector generate_prbs(int register_length, std::size_t total_length, std::uint64_t seed,
                     std::pair<double, double> levels) {
    const auto& taps = prbs_taps(register_length);
    const int m = register_length;
    const std::uint64_t period = (std::uint64_t{1} << m) - 1;
    std::uint64_t state = seed % period + 1;

    Vector out(static_cast<Index>(total_length));
    for (std::size_t k = 0; k < total_length; ++k) {
        out(static_cast<Index>(k)) = (state & 1U) ? levels.first : levels.second;
        std::uint64_t bit = 0;
        for (int t : taps) bit ^= (state >> (m - t)) & 1U;
        state = (state >> 1) | (bit << (m - 1));
    }
    return out;
}

int prbs_bits_for_length(std::size_t n) {
    for (int m = 2; m <= 31; ++m)
        if (((std::uint64_t{1} << m) - 1) >= n) return m;
    return 31;
}

Vector simulate_system(const DifferenceEquation& model, const Vector& u_star) {
    model.validate();
    if (!is_stable(model.a)) throw UnstableModel("simulate_system: AR polynomial is not stable");
    if (u_star.size() < model.eta() + 1)
        throw InvalidArgument("simulate_system: input shorter than eta + 1 samples");

    const Index n = u_star.size();
    const Vector bf = model.b_full();
    Vector y = Vector::Zero(n);
    for (Index k = 0; k < n; ++k) {
        double acc = 0.0;
        for (Index i = 0; i < model.a.size() && i < k; ++i) acc -= model.a(i) * y(k - 1 - i);
        for (Index j = model.delay; j < bf.size() && j <= k; ++j) acc += bf(j) * u_star(k - j);
        y(k) = acc;
    }
    return y;
}

int noise_burn_in(const Vector& a, int eta) {
    int burn = std::max(100, 50 * eta);
    if (a.size() > 0) {
        const double rho = ar_roots(a).cwiseAbs().maxCoeff();
        if (rho > 0.0 && rho < 1.0) {
            const double tau = -1.0 / std::log(rho);
            burn = std::max(burn, static_cast<int>(std::ceil(10.0 * tau)));
        }
    }
    return burn;
}

TimeSeriesPair corrupt_measurements(const Vector& y_star, const Vector& u_star,
                                    const DifferenceEquation& model, const NoiseSpec& noise,
                                    std::uint64_t seed) {
    model.validate();
    if (!is_stable(model.a)) throw UnstableModel("corrupt_measurements: AR polynomial is not stable");
    if (y_star.size() != u_star.size())
        throw InvalidArgument("corrupt_measurements: y_star and u_star lengths differ");
    if (noise.sigma2_ey < 0.0 || noise.sigma2_eu < 0.0)
        throw InvalidArgument("corrupt_measurements: noise variances must be non-negative");

    const Index n = y_star.size();
    const int burn = noise_burn_in(model.a, model.eta());
    const Index total = n + burn;

    GaussianStream ey(derive_seed(seed, 1));
    GaussianStream eu(derive_seed(seed, 2));
    const double sy = std::sqrt(noise.sigma2_ey);
    const double su = std::sqrt(noise.sigma2_eu);

    Vector v = Vector::Zero(total);
    const Index ny = model.a.size();
    for (Index k = 0; k < total; ++k) {
        double acc = sy * ey.next();
        for (Index i = 0; i < ny && i < k; ++i) acc -= model.a(i) * v(k - 1 - i);
        v(k) = acc;
    }

    TimeSeriesPair out;
    out.seed = seed;
    out.y = y_star + v.tail(n);
    out.u.resize(n);
    for (Index k = 0; k < n; ++k) out.u(k) = u_star(k) + su * eu.next();
    out.y_star = y_star;
    out.u_star = u_star;
    return out;
}

TimeSeriesPair simulate_dataset(const DifferenceEquation& model, const Vector& u_star,
                                const NoiseSpec& noise, std::uint64_t seed) {
    return corrupt_measurements(simulate_system(model, u_star), u_star, model, noise, seed);
}

double sample_variance(const Vector& x) {
    if (x.size() == 0) return 0.0;
    const double mean = x.mean();
    return (x.array() - mean).square().mean();
}

double snr(const Vector& signal, const Vector& noise) {
    if (signal.size() != noise.size()) throw InvalidArgument("snr: lengths differ");
    const double vn = sample_variance(noise);
    if (!(vn > 0.0)) throw InvalidArgument("snr: noise has zero variance");
    return sample_variance(signal) / vn;
}

}  // namespace eivarx
