#include "swipt/policies.hpp"

#include <cmath>

namespace swipt {

Policy Policy::optimal(const DecisionTable& t) {
    Policy p{PolicyKind::Optimal};
    p.table = &t;
    return p;
}

Policy Policy::optimal(const DecisionTable3D& t) {
    Policy p{PolicyKind::Optimal};
    p.table3 = &t;
    return p;
}

Policy Policy::bernoulli(double p) {
    if (p < 0.0 || p > 1.0) throw ConfigError("Bernoulli harvest probability must be in [0,1]");
    Policy pol{PolicyKind::Bernoulli};
    pol.bernoulli_p = p;
    return pol;
}

const char* Policy::name() const {
    switch (kind) {
        case PolicyKind::Optimal: return "optimal";
        case PolicyKind::BatteryFirst: return "bf";
        case PolicyKind::InformationFirst: return "if";
        case PolicyKind::CoinToss: return "ct";
        case PolicyKind::Bernoulli: return "bernoulli";
        case PolicyKind::SimpleArq: return "simple-arq";
    }
    return "?";
}

double harvest_probability(const Policy& policy, int b, int u, int g, const InfoGrid& grid,
                           const SystemParams& params) {
    if (policy.kind == PolicyKind::SimpleArq)
        throw ConfigError("harvest_probability: simple ARQ is not a harvest/accumulate policy");
    if (b < 1 || u == grid.n_units()) return 1.0;

    if (policy.kind == PolicyKind::Optimal) {
        // The table is authoritative on the whole interior; in negatively
        // correlated channels it can harvest above the decode threshold to
        // wait out a likely-BAD slot. Battery lookups beyond b_max land in
        // the constant-in-battery region where ID is established.
        Choice c;
        if (policy.table3) {
            c = policy.table3->decision(std::min(b, policy.table3->b_max()), u, g);
        } else if (policy.table) {
            c = policy.table->decision(std::min(b, policy.table->b_max()), u);
        } else {
            throw ConfigError("optimal policy without a decision table");
        }
        return c == Choice::EH ? 1.0 : 0.0;  // ties resolve to ID
    }

    if (b >= params.decode_cost + 1) return 0.0;
    switch (policy.kind) {
        case PolicyKind::BatteryFirst:
            return b < params.decode_cost ? 1.0 : 0.0;
        case PolicyKind::InformationFirst:
            return 0.0;
        case PolicyKind::CoinToss:
            return 0.5;
        case PolicyKind::Bernoulli:
            return policy.bernoulli_p;
        default:
            break;
    }
    throw ConfigError("harvest_probability: unknown policy kind");
}

Decision decide(const Policy& policy, const ReceiverState& s, const SystemParams& params,
                Rng& rng) {
    if (policy.kind == PolicyKind::SimpleArq)
        return s.battery < params.decode_cost + 1 ? Decision::Harvest : Decision::AttemptDecode;

    if (s.battery < 1.0 || s.info >= params.rate_good) return Decision::Harvest;

    const int b = static_cast<int>(std::floor(s.battery + 1e-9));
    double p_harvest;
    if (policy.kind == PolicyKind::Optimal) {
        if (!policy.table && !policy.table3)
            throw ConfigError("optimal policy without a decision table");
        const InfoGrid& grid = policy.table3 ? policy.table3->grid() : policy.table->grid();
        const int u = grid.floor_index(s.info);
        p_harvest = harvest_probability(policy, b, u, s.prev_good.value_or(1), grid, params);
    } else {
        if (s.battery >= params.decode_cost + 1) return Decision::Accumulate;
        const InfoGrid grid(params);
        p_harvest = harvest_probability(policy, b, grid.floor_index(s.info), 1, grid, params);
    }
    if (p_harvest >= 1.0) return Decision::Harvest;
    if (p_harvest <= 0.0) return Decision::Accumulate;
    return rng.next_unit() < p_harvest ? Decision::Harvest : Decision::Accumulate;
}

ArqOutcome simple_arq_attempt(const ReceiverState& s, int good, const SystemParams& params) {
    if (s.battery < params.decode_cost + 1)
        throw InsufficientEnergy("simple ARQ attempts only with battery >= decode_cost + 1");
    ArqOutcome out;
    if (good) {
        out.success = true;
        out.state = s;
        return out;
    }
    out.success = false;
    out.state.battery = s.battery - 1.0;  // sampling cost; overshoot is retained
    out.state.info = 0.0;                 // dropped packet discards partial information
    if (params.channel.kind == ChannelKind::Correlated) out.state.prev_good = good;
    return out;
}

}  // namespace swipt
