#ifndef SWIPT_POLICIES_HPP
#define SWIPT_POLICIES_HPP

#include "swipt/channel.hpp"
#include "swipt/solver_corr.hpp"

namespace swipt {

enum class PolicyKind {
    Optimal,
    BatteryFirst,
    InformationFirst,
    CoinToss,
    Bernoulli,
    SimpleArq,
};

// A decision rule mapping ReceiverState -> action. Every HARQ policy here
// harvests when battery < 1 or the message is complete, and accumulates
// information when battery > decode_cost; they differ only on the interior.
struct Policy {
    PolicyKind kind = PolicyKind::BatteryFirst;
    double bernoulli_p = 0.5;
    const DecisionTable* table = nullptr;
    const DecisionTable3D* table3 = nullptr;

    static Policy optimal(const DecisionTable& t);
    static Policy optimal(const DecisionTable3D& t);
    static Policy battery_first() { return {PolicyKind::BatteryFirst}; }
    static Policy information_first() { return {PolicyKind::InformationFirst}; }
    static Policy coin_toss() { return {PolicyKind::CoinToss}; }
    static Policy bernoulli(double p);
    static Policy simple_arq() { return {PolicyKind::SimpleArq}; }

    const char* name() const;
};

enum class Decision : std::uint8_t { Harvest, Accumulate, AttemptDecode };

// The action the policy takes at a non-absorbing state. CoinToss and
// Bernoulli consume one draw from `rng` on interior states.
Decision decide(const Policy& policy, const ReceiverState& s, const SystemParams& params,
                Rng& rng);

// Probability that the policy harvests at (battery b, info index u, previous
// channel state g), as a mixture over its randomization. Defined for the HARQ
// policies only; g is ignored except by the table-backed correlated optimum.
double harvest_probability(const Policy& policy, int b, int u, int g, const InfoGrid& grid,
                           const SystemParams& params);

struct ArqOutcome {
    bool success = false;
    ReceiverState state;  // post-drop state when not successful
};

// One simple-ARQ decode attempt: sampling costs one unit; the packet goes
// through exactly when the slot is GOOD, otherwise it is dropped and the
// accumulated information resets.
ArqOutcome simple_arq_attempt(const ReceiverState& s, int good, const SystemParams& params);

}  // namespace swipt

#endif
