#pragma once

#include "eivarx/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace eivarx {

/// Feedback taps (1-based register positions) of the maximal-length
/// Fibonacci LFSR used for a given register length in [2, 31].
const std::vector<int>& prbs_taps(int register_length);

/**
 * Maximal-length PRBS. A 1 bit maps to levels.first, a 0 bit to
 * levels.second. The register starts at (seed mod (2^m - 1)) + 1 and the
 * sequence repeats with period 2^m - 1 when total_length exceeds it.
 */
Vector generate_prbs(int register_length, std::size_t total_length, std::uint64_t seed = 0,
                     std::pair<double, double> levels = {-1.0, 1.0});

/// Smallest register length whose period covers n samples.
int prbs_bits_for_length(std::size_t n);

/// Noise-free output of `model` driven by `u_star`, zero initial conditions.
Vector simulate_system(const DifferenceEquation& model, const Vector& u_star);

/// Warm-up samples discarded from the colored output noise:
/// max(100, 50 eta, ceil(10 tau)) with tau the slowest AR time constant.
int noise_burn_in(const Vector& a, int eta);

/**
 * y = y_star + v_y with A(q^-1) v_y = e_y, u = u_star + e_u.
 * e_y and e_u come from independent streams derived from `seed`.
 */
TimeSeriesPair corrupt_measurements(const Vector& y_star, const Vector& u_star,
                                    const DifferenceEquation& model, const NoiseSpec& noise,
                                    std::uint64_t seed);

/// Convenience: PRBS-free simulation of an arbitrary input followed by corruption.
TimeSeriesPair simulate_dataset(const DifferenceEquation& model, const Vector& u_star,
                                const NoiseSpec& noise, std::uint64_t seed);

/// var(signal) / var(noise), sample variances with ddof = 0.
double snr(const Vector& signal, const Vector& noise);

/// Sample variance with ddof = 0.
double sample_variance(const Vector& x);

}  // namespace eivarx
