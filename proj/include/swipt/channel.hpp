#ifndef SWIPT_CHANNEL_HPP
#define SWIPT_CHANNEL_HPP

#include <cstdint>

#include "swipt/model.hpp"

namespace swipt {

// splitmix64: tiny, fast, seedable generator. Each Monte Carlo episode gets
// its own stream derived from (master seed, episode index) so runs are
// reproducible regardless of how episodes are distributed over workers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

private:
    std::uint64_t state_;
};

std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t stream_index);

// Stateful GOOD/BAD generator. `current` is the previous slot's state and
// conditions the next draw in the correlated model.
struct ChannelProcess {
    ChannelSpec spec;
    int current = 1;

    // Draws this slot's state, updates `current`, returns 1 for GOOD.
    int next(Rng& rng) {
        double p = spec.is_iid() ? spec.lambda() : spec.lambda_given(current);
        current = rng.next_unit() < p ? 1 : 0;
        return current;
    }
};

struct SteadyState {
    double phi0 = 0.0;  // long-run BAD occupancy
    double phi1 = 0.0;
};

// Stationary distribution of the two-state chain. Throws DegenerateChain for
// the reducible (l0=0, l1=1) and periodic (l0=1, l1=0) corner cases.
SteadyState steady_state(double lambda0, double lambda1);

}  // namespace swipt

#endif
