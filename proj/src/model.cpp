#include "swipt/model.hpp"

#include <cmath>
#include <sstream>

namespace swipt {

namespace {

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

double ChannelSpec::lambda() const {
    if (!is_iid()) throw ConfigError("lambda(): channel is not i.i.d.");
    return lambda0;
}

void SystemParams::validate() const {
    std::ostringstream why;
    if (decode_cost < 1) why << "decode_cost must be >= 1; ";
    if (harvest_units < 1) why << "harvest_units must be >= 1; ";
    if (!(rate_bad > 0.0)) why << "rate_bad must be positive; ";
    if (!(rate_good > 0.0)) why << "rate_good must be positive; ";
    if (rate_bad > rate_good) why << "rate_bad must not exceed rate_good; ";
    if (!is_prob(channel.lambda0) || !is_prob(channel.lambda1))
        why << "channel probabilities must lie in [0,1]; ";
    if (channel.is_iid() && channel.lambda0 != channel.lambda1)
        why << "i.i.d. channel with two distinct probabilities; ";

    const bool any_pg = tx_power || gain_bad || gain_good;
    if (any_pg) {
        if (!(tx_power && gain_bad && gain_good)) {
            why << "tx_power, gain_bad, gain_good must be supplied together; ";
        } else if (*tx_power <= 0.0 || *gain_bad <= 0.0 || *gain_good <= 0.0) {
            why << "tx_power and gains must be positive; ";
        } else {
            const double r1 = std::log2(1.0 + *tx_power * *gain_good);
            const double r0 = std::log2(1.0 + *tx_power * *gain_bad);
            if (std::abs(r1 - rate_good) > 1e-12 || std::abs(r0 - rate_bad) > 1e-12)
                why << "rates do not match log2(1 + P*g) for the supplied gains; ";
        }
    }

    const std::string msg = why.str();
    if (!msg.empty()) throw ConfigError("invalid SystemParams: " + msg);
}

InfoGrid::InfoGrid(double rate_bad, double rate_good) {
    if (!(rate_bad > 0.0) || !(rate_good > 0.0) || rate_bad > rate_good)
        throw ConfigError("InfoGrid requires 0 < rate_bad <= rate_good");
    n_units_ = static_cast<int>(std::ceil(rate_good / rate_bad - 1e-12));
    levels_.reserve(n_units_ + 1);
    for (int u = 0; u <= n_units_; ++u)
        levels_.push_back(std::min(u * rate_bad, rate_good));
    levels_.back() = rate_good;
}

double InfoGrid::level(int u) const {
    if (u < 0 || u > n_units_) throw OutOfRange("InfoGrid::level index");
    return levels_[static_cast<std::size_t>(u)];
}

int InfoGrid::floor_index(double bits) const {
    if (bits >= levels_.back() - 1e-12) return n_units_;
    const double step = n_units_ > 1 ? levels_[1] : levels_.back();
    int u = static_cast<int>(std::floor(bits / step + 1e-9));
    if (u < 0) u = 0;
    if (u > n_units_ - 1) u = n_units_ - 1;
    // guard against rounding at level boundaries
    while (u > 0 && levels_[u] > bits + 1e-12) --u;
    while (u + 1 < n_units_ && levels_[u + 1] <= bits + 1e-12) ++u;
    return u;
}

RatePair split_rates(double rho, const SystemParams& params) {
    return {std::log2(rho + (1.0 - rho) * std::exp2(params.rate_bad)),
            std::log2(rho + (1.0 - rho) * std::exp2(params.rate_good))};
}

ReceiverState step(const ReceiverState& s, Action a, int good, const SystemParams& params) {
    const bool harvesting_only = a.rho == 1.0;
    if (!harvesting_only && s.battery < 1.0)
        throw InsufficientEnergy("transceiver needs one energy unit; battery below 1");

    ReceiverState next;
    next.battery = s.battery + (good ? a.rho * params.harvest_units : 0.0) -
                   (harvesting_only ? 0.0 : 1.0);
    const RatePair r = split_rates(a.rho, params);
    next.info = std::min(s.info + (good ? r.high : r.low), params.rate_good);
    if (params.channel.kind == ChannelKind::Correlated) next.prev_good = good;
    return next;
}

bool is_absorbing(const ReceiverState& s, const SystemParams& params) {
    return s.battery >= params.decode_cost && s.info >= params.rate_good;
}

std::vector<Transition> transition_kernel(const ReceiverState& s, Action a,
                                          const SystemParams& params) {
    const double p_good = params.channel.is_iid()
                              ? params.channel.lambda()
                              : params.channel.lambda_given(s.prev_good.value_or(1));
    const ReceiverState on_good = step(s, a, 1, params);
    const ReceiverState on_bad = step(s, a, 0, params);

    const bool same = on_good.battery == on_bad.battery && on_good.info == on_bad.info &&
                      on_good.prev_good == on_bad.prev_good;
    if (same) return {{on_good, 1.0}};
    return {{on_good, p_good}, {on_bad, 1.0 - p_good}};
}

}  // namespace swipt
