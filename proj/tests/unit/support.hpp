#pragma once

#include <eivarx/eivarx.hpp>

#include <cstdint>

namespace eivarx::testing {

inline DifferenceEquation example1_model() {
    return DifferenceEquation(Vector{{-1.5, 0.7}}, Vector{{1.0, 0.5}}, 1);
}

inline DifferenceEquation example2_model() {
    return DifferenceEquation(Vector{{-1.1, 0.7}}, Vector{{1.0, 0.5}}, 2);
}

/// PRBS-driven dataset with the register length chosen to cover n.
inline TimeSeriesPair make_dataset(const DifferenceEquation& model, std::size_t n,
                                   const NoiseSpec& noise, std::uint64_t seed) {
    const Vector u_star = generate_prbs(prbs_bits_for_length(n), n);
    return simulate_dataset(model, u_star, noise, seed);
}

inline TimeSeriesPair example1_data(std::size_t n, std::uint64_t seed) {
    return make_dataset(example1_model(), n, {0.2, 0.1}, seed);
}

inline TimeSeriesPair example2_data(std::size_t n, std::uint64_t seed) {
    return make_dataset(example2_model(), n, {0.15, 0.1}, seed);
}

}  // namespace eivarx::testing
