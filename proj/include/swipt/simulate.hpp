#ifndef SWIPT_SIMULATE_HPP
#define SWIPT_SIMULATE_HPP

#include <iosfwd>

#include "swipt/policies.hpp"

namespace swipt {

// Sample statistics of slots-until-decode. `episodes` is the uncensored
// sample size behind mean/stderr; capped episodes are excluded from the mean
// and reported in `censored`.
struct EstimateReport {
    double mean = 0.0;
    double stderr_ = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    long long episodes = 0;
    long long requested = 0;
    long long censored = 0;
    long long max_slots = 0;
    std::uint64_t master_seed = 0;
};

struct SimOptions {
    long long slot_cap = 1'000'000'000LL;
    ReceiverState initial{0.0, 0.0, std::nullopt};
    // Correlated model: fixed initial channel state; unset draws it from the
    // steady-state distribution per episode.
    std::optional<int> initial_good;
    bool parallel = true;
};

// Slots elapsed until the receiver first absorbs (or, for simple ARQ, until a
// successful attempt). Throws EpisodeCap at the slot cap.
long long run_episode(const Policy& policy, const SystemParams& params, Rng& rng,
                      const ReceiverState& initial, long long slot_cap = 1'000'000'000LL,
                      std::optional<int> initial_good = std::nullopt);

// Mean over independent episodes, each on its own stream derived from
// (master_seed, episode index). Results are bit-identical for a fixed seed
// and episode count regardless of worker count.
EstimateReport estimate(const Policy& policy, const SystemParams& params, long long episodes,
                        std::uint64_t master_seed, const SimOptions& opts = {});

// Single-threaded reference implementation; must agree with estimate() bit
// for bit.
EstimateReport estimate_serial(const Policy& policy, const SystemParams& params,
                               long long episodes, std::uint64_t master_seed,
                               SimOptions opts = {});

void write_csv_header(std::ostream& out);
void write_csv_row(const Policy& policy, const SystemParams& params, const EstimateReport& r,
                   std::ostream& out);

// Exact mean absorption times of the chain induced by a (possibly randomized)
// HARQ policy, via a dense solve over the transient states.
class OracleResult {
public:
    OracleResult(const SystemParams& params, int b_cap);

    bool correlated() const { return params_.channel.kind == ChannelKind::Correlated; }
    int b_cap() const { return b_cap_; }
    const InfoGrid& grid() const { return grid_; }

    double at(int b, int u, int g = 0) const;
    // Start-of-episode mean from (0,0): steady-state average over G for the
    // correlated model, plain k for i.i.d.
    double from_empty() const;

    std::size_t index(int b, int u, int g) const;
    std::vector<double>& values() { return k_; }

private:
    SystemParams params_;
    InfoGrid grid_;
    int b_cap_;
    std::vector<double> k_;
};

// Throws SingularSystem when the policy-induced chain cannot absorb.
OracleResult oracle_k(const SystemParams& params, const Policy& policy);

}  // namespace swipt

#endif
