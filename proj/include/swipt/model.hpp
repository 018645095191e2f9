#ifndef SWIPT_MODEL_HPP
#define SWIPT_MODEL_HPP

#include <optional>
#include <vector>

#include "swipt/errors.hpp"

namespace swipt {

enum class ChannelKind { Iid, Correlated };

// Two-state (GOOD/BAD) channel description. For the i.i.d. model both
// conditional probabilities equal the marginal GOOD probability; for the
// correlated model lambda0 = Pr[good | prev bad], lambda1 = Pr[good | prev good].
struct ChannelSpec {
    ChannelKind kind = ChannelKind::Iid;
    double lambda0 = 0.5;
    double lambda1 = 0.5;

    static ChannelSpec iid(double lambda) { return {ChannelKind::Iid, lambda, lambda}; }
    static ChannelSpec correlated(double l0, double l1) {
        return {ChannelKind::Correlated, l0, l1};
    }

    bool is_iid() const { return kind == ChannelKind::Iid; }
    // Marginal GOOD probability of the i.i.d. model.
    double lambda() const;
    // Pr[good this slot | previous slot state], prev_good in {0,1}.
    double lambda_given(int prev_good) const { return prev_good ? lambda1 : lambda0; }
};

// All physical constants of the link.
//
// decode_cost  (E_d) energy units consumed by one decode attempt
// harvest_units (e)  energy units harvested per GOOD slot when fully harvesting
// rate_bad     (R0)  bits/slot accumulated in the BAD state
// rate_good    (R1)  bits/slot in the GOOD state; also the encoding rate, so a
//                    single GOOD reception carries a whole message
//
// When tx_power/gain_bad/gain_good are supplied, the rates must equal
// log2(1 + P*g) for the respective gains.
struct SystemParams {
    int decode_cost = 1;
    int harvest_units = 1;
    double rate_bad = 1.0;
    double rate_good = 1.0;
    ChannelSpec channel = ChannelSpec::iid(0.5);

    std::optional<double> tx_power;
    std::optional<double> gain_bad;
    std::optional<double> gain_good;

    void validate() const;  // throws ConfigError
};

// Receiver state: battery level (energy units), accumulated mutual
// information (bits, saturating at rate_good), and — for the correlated
// model — the previous slot's channel state.
struct ReceiverState {
    double battery = 0.0;
    double info = 0.0;
    std::optional<int> prev_good;
};

// Power-split ratio: 1 feeds the whole RF signal to the energy harvester,
// 0 to the information decoder.
struct Action {
    double rho = 0.0;
};

// Discrete ladder of reachable information levels under no-split policies:
// {0, R0, 2*R0, ...} capped at R1. n_units BAD receptions complete a message.
class InfoGrid {
public:
    InfoGrid(double rate_bad, double rate_good);
    explicit InfoGrid(const SystemParams& p) : InfoGrid(p.rate_bad, p.rate_good) {}

    int n_units() const { return n_units_; }
    double level(int u) const;
    const std::vector<double>& levels() const { return levels_; }
    // Largest grid index whose level does not exceed `bits`.
    int floor_index(double bits) const;

private:
    int n_units_;
    std::vector<double> levels_;
};

// Per-slot mutual information for a given split ratio: `high` in the GOOD
// state, `low` in the BAD state.
struct RatePair {
    double low = 0.0;
    double high = 0.0;
};

RatePair split_rates(double rho, const SystemParams& params);

// Deterministic one-slot evolution given the realized channel state
// good in {0,1}. Throws InsufficientEnergy when rho != 1 and battery < 1.
ReceiverState step(const ReceiverState& s, Action a, int good, const SystemParams& params);

// A state is absorbing once the battery covers a decode attempt and the
// accumulated information reaches the encoding rate.
bool is_absorbing(const ReceiverState& s, const SystemParams& params);

struct Transition {
    ReceiverState next;
    double prob = 0.0;
};

// GOOD/BAD outcome distribution of one slot; entries merge when both
// outcomes land in the same state. Probabilities sum to 1.
std::vector<Transition> transition_kernel(const ReceiverState& s, Action a,
                                          const SystemParams& params);

}  // namespace swipt

#endif
