#include "swipt/channel.hpp"

namespace swipt {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
    return mix64(a + 0x9E3779B97F4A7C15ull * (b + 1));
}

std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return Rng::mix(mix64(master_seed), stream_index);
}

SteadyState steady_state(double lambda0, double lambda1) {
    if (lambda0 < 0.0 || lambda0 > 1.0 || lambda1 < 0.0 || lambda1 > 1.0)
        throw ConfigError("steady_state: probabilities must lie in [0,1]");
    if (lambda0 == 0.0 && lambda1 == 1.0)
        throw DegenerateChain("reducible chain: both states absorbing");
    if (lambda0 == 1.0 && lambda1 == 0.0)
        throw DegenerateChain("periodic chain: states alternate deterministically");
    const double phi0 = (1.0 - lambda1) / (1.0 + lambda0 - lambda1);
    return {phi0, 1.0 - phi0};
}

}  // namespace swipt
