#include "swipt/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace swipt {

namespace {

int floor_grid(double value, double step, int count) {
    int i = static_cast<int>(std::floor(value / step + 1e-9));
    return std::clamp(i, 0, count - 1);
}

struct ActionPlan {
    double rho = 0.0;
    std::vector<std::int32_t> next_good;  // -1 where the action is illegal
    std::vector<std::int32_t> next_bad;
};

struct Discretization {
    std::vector<double> b_levels;
    std::vector<double> m_levels;
    std::vector<char> absorbing;
    std::vector<ActionPlan> actions;

    std::size_t states() const { return b_levels.size() * m_levels.size(); }
    std::size_t index(std::size_t ib, std::size_t im) const {
        return ib * m_levels.size() + im;
    }
};

Discretization discretize(const SystemParams& params, const MdpConfig& cfg) {
    Discretization d;
    const int nb = static_cast<int>(std::floor(cfg.b_cap / cfg.b_step + 1e-9)) + 1;
    d.b_levels.reserve(nb);
    for (int i = 0; i < nb; ++i) d.b_levels.push_back(i * cfg.b_step);

    const InfoGrid m_grid(cfg.m_step, params.rate_good);
    d.m_levels = m_grid.levels();

    d.absorbing.resize(d.states());
    for (std::size_t ib = 0; ib < d.b_levels.size(); ++ib)
        for (std::size_t im = 0; im < d.m_levels.size(); ++im)
            d.absorbing[d.index(ib, im)] =
                d.b_levels[ib] >= params.decode_cost && d.m_levels[im] >= params.rate_good;

    d.actions.reserve(cfg.rho_grid.size());
    for (double rho : cfg.rho_grid) {
        ActionPlan plan;
        plan.rho = rho;
        plan.next_good.assign(d.states(), -1);
        plan.next_bad.assign(d.states(), -1);
        const RatePair r = split_rates(rho, params);
        const bool harvesting_only = rho == 1.0;
        for (std::size_t ib = 0; ib < d.b_levels.size(); ++ib) {
            const double b = d.b_levels[ib];
            if (!harvesting_only && b < 1.0) continue;  // transceiver needs one unit
            for (std::size_t im = 0; im < d.m_levels.size(); ++im) {
                const std::size_t s = d.index(ib, im);
                if (d.absorbing[s]) continue;
                const double m = d.m_levels[im];
                // fractional outcomes snap down so interior splits never
                // inherit precision the grid cannot represent
                const double bg = b + rho * params.harvest_units - (harvesting_only ? 0.0 : 1.0);
                const double bb = b - (harvesting_only ? 0.0 : 1.0);
                const double mg = std::min(m + r.high, params.rate_good);
                const double mb = std::min(m + r.low, params.rate_good);
                const int nbb = static_cast<int>(d.b_levels.size());
                plan.next_good[s] = static_cast<std::int32_t>(
                    d.index(floor_grid(bg, cfg.b_step, nbb), m_grid.floor_index(mg)));
                plan.next_bad[s] = static_cast<std::int32_t>(
                    d.index(floor_grid(bb, cfg.b_step, nbb), m_grid.floor_index(mb)));
            }
        }
        d.actions.push_back(std::move(plan));
    }
    return d;
}

MdpConfig with_defaults(const SystemParams& params, MdpConfig cfg) {
    if (cfg.rho_grid.empty()) cfg.rho_grid = MdpConfig::uniform_rho_grid(101);
    if (cfg.m_step <= 0.0) cfg.m_step = params.rate_bad;
    if (cfg.b_cap <= 0.0) {
        const InfoGrid grid(params);
        cfg.b_cap = params.decode_cost + std::max(params.harvest_units, grid.n_units());
    }
    cfg.validate();
    return cfg;
}

}  // namespace

std::vector<double> MdpConfig::uniform_rho_grid(int points) {
    if (points < 2) throw ConfigError("rho grid needs at least the endpoints");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
    g.front() = 0.0;
    g.back() = 1.0;
    return g;
}

void MdpConfig::validate() const {
    if (beta < 0.0 || beta >= 1.0) throw ConfigError("discount factor must lie in [0,1)");
    if (tol <= 0.0) throw ConfigError("tolerance must be positive");
    if (b_step <= 0.0 || m_step <= 0.0 || b_cap <= 0.0)
        throw ConfigError("grid steps and cap must be positive");
    if (max_sweeps < 1) throw ConfigError("max_sweeps must be >= 1");
    const bool has0 = std::any_of(rho_grid.begin(), rho_grid.end(),
                                  [](double r) { return r == 0.0; });
    const bool has1 = std::any_of(rho_grid.begin(), rho_grid.end(),
                                  [](double r) { return r == 1.0; });
    if (!has0 || !has1) throw ConfigError("rho grid must contain 0 and 1");
    for (double r : rho_grid)
        if (r < 0.0 || r > 1.0) throw ConfigError("rho grid values must lie in [0,1]");
}

MdpSolution value_iteration(const SystemParams& params, const MdpConfig& raw_cfg) {
    params.validate();
    if (!params.channel.is_iid())
        throw ConfigError("value_iteration handles i.i.d. channels only");
    const MdpConfig cfg = with_defaults(params, raw_cfg);
    const double lam = params.channel.lambda();
    const double beta = cfg.beta;

    Discretization d = discretize(params, cfg);
    const std::size_t N = d.states();
    const std::int64_t n64 = static_cast<std::int64_t>(N);

    std::vector<double> v(N, 0.0), v_next(N, 0.0);
    MdpSolution sol;
    sol.b_levels = d.b_levels;
    sol.m_levels = d.m_levels;
    sol.converged = false;

    for (sol.sweeps = 0; sol.sweeps < cfg.max_sweeps; ++sol.sweeps) {
        double residual = 0.0;
#pragma omp parallel for reduction(max : residual) schedule(static) if (cfg.parallel)
        for (std::int64_t s = 0; s < n64; ++s) {
            if (d.absorbing[s]) {
                v_next[s] = 0.0;
                continue;
            }
            double best = -std::numeric_limits<double>::infinity();
            for (const ActionPlan& a : d.actions) {
                if (a.next_good[s] < 0) continue;
                const double ev = lam * v[a.next_good[s]] + (1.0 - lam) * v[a.next_bad[s]];
                best = std::max(best, ev);
            }
            const double val = -1.0 + beta * best;
            residual = std::max(residual, std::abs(val - v[s]));
            v_next[s] = val;
        }
        std::swap(v, v_next);
        sol.residual = residual;
        if (residual < cfg.tol) {
            sol.converged = true;
            ++sol.sweeps;
            break;
        }
    }

    // greedy policy; ties prefer the no-split endpoints, then the smaller rho
    std::vector<std::size_t> order(d.actions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double rx = d.actions[x].rho, ry = d.actions[y].rho;
        const bool ex = rx == 0.0 || rx == 1.0, ey = ry == 0.0 || ry == 1.0;
        if (ex != ey) return ex;
        return rx < ry;
    });
    sol.policy_rho.assign(N, 1.0);
    for (std::size_t s = 0; s < N; ++s) {
        if (d.absorbing[s]) {
            sol.policy_rho[s] = 0.0;
            continue;
        }
        double best = -std::numeric_limits<double>::infinity();
        double best_rho = 1.0;
        for (std::size_t ai : order) {
            const ActionPlan& a = d.actions[ai];
            if (a.next_good[s] < 0) continue;
            const double ev = lam * v[a.next_good[s]] + (1.0 - lam) * v[a.next_bad[s]];
            if (ev > best + 1e-12 * std::max(1.0, std::abs(best))) {
                best = ev;
                best_rho = a.rho;
            }
        }
        sol.policy_rho[s] = best_rho;
    }
    sol.values = std::move(v);
    return sol;
}

double no_split_gap(const SystemParams& params, MdpConfig cfg) {
    const MdpConfig full = with_defaults(params, std::move(cfg));
    if (full.rho_grid.size() < 3)
        throw ConfigError("no_split_gap needs interior rho grid points");
    MdpConfig binary = full;
    binary.rho_grid = {0.0, 1.0};

    const MdpSolution vf = value_iteration(params, full);
    const MdpSolution vb = value_iteration(params, binary);
    double gap = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < vf.values.size(); ++s)
        gap = std::max(gap, vf.values[s] - vb.values[s]);
    return gap;
}

double max_split_advantage(const DecisionTable& table, std::span<const double> interior_rhos) {
    const SystemParams& p = table.params();
    const InfoGrid& grid = table.grid();
    const double lam = p.channel.lambda();
    const int n = grid.n_units();

    // Continuations evaluate on the solved table: information snaps down to
    // the grid and the split slot's fractional harvest is floored away, which
    // is exactly the regime in which ID dominance is provable.
    auto cont = [&](int b, double bits) {
        return table.lookup_k(b, grid.floor_index(std::min(bits, p.rate_good)));
    };

    double worst = -std::numeric_limits<double>::infinity();
    for (double rho : interior_rhos) {
        if (rho <= 0.0 || rho >= 1.0)
            throw ConfigError("max_split_advantage expects interior rho values");
        const RatePair r = split_rates(rho, p);
        for (int b = 1; b <= table.b_max(); ++b) {
            for (int u = 0; u < n; ++u) {
                const double m = grid.level(u);
                const double split = 1.0 + lam * cont(b - 1, m + r.high) +
                                     (1.0 - lam) * cont(b - 1, m + r.low);
                worst = std::max(worst, table.k_id(b, u) - split);
            }
        }
    }
    return worst;
}

void write_csv(const MdpSolution& sol, std::ostream& out) {
    out << "b,m_bits,value,rho\n";
    out.precision(12);
    for (std::size_t ib = 0; ib < sol.b_levels.size(); ++ib)
        for (std::size_t im = 0; im < sol.m_levels.size(); ++im)
            out << sol.b_levels[ib] << ',' << sol.m_levels[im] << ','
                << sol.values[sol.index(ib, im)] << ',' << sol.policy_rho[sol.index(ib, im)]
                << '\n';
}

}  // namespace swipt
