#pragma once

#include <cstdint>
#include <random>

namespace eivarx {

/// SplitMix64 finaliser, used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/**
 * Standard normal draws via Box-Muller over mt19937_64.
 *
 * Uniforms use the top 53 bits of each 64-bit word, so the stream is
 * identical on every platform for a given seed.
 */
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed);

    /// Uniform in [0, 1).
    double uniform();
    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace eivarx
