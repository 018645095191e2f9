#ifndef SWIPT_MDP_HPP
#define SWIPT_MDP_HPP

#include <iosfwd>
#include <span>

#include "swipt/solver_iid.hpp"

namespace swipt {

// Discounted value iteration over a discretized (battery, info) space with a
// finite split-ratio grid. I.i.d. channels only; a consistency check for the
// absorbing-chain solvers, not the source of truth.
struct MdpConfig {
    double beta = 0.99;
    std::vector<double> rho_grid;  // must contain 0 and 1; default 101 points
    double b_step = 1.0;
    double b_cap = 0.0;  // 0: decode_cost + max(harvest_units, n_units)
    double m_step = 0.0;  // 0: rate_bad
    double tol = 1e-8;
    int max_sweeps = 200000;
    bool parallel = true;

    static std::vector<double> uniform_rho_grid(int points);
    void validate() const;
};

struct MdpSolution {
    std::vector<double> b_levels;
    std::vector<double> m_levels;
    std::vector<double> values;      // row-major [ib][im]
    std::vector<double> policy_rho;  // argmax action; ties favor {0,1}, then smaller
    int sweeps = 0;
    double residual = 0.0;
    bool converged = false;

    std::size_t index(std::size_t ib, std::size_t im) const { return ib * m_levels.size() + im; }
    double value(std::size_t ib, std::size_t im) const { return values[index(ib, im)]; }
};

MdpSolution value_iteration(const SystemParams& params, const MdpConfig& cfg);

// max over states of V(full rho grid) - V(rho in {0,1}); values near zero
// confirm that interior split ratios never help.
double no_split_gap(const SystemParams& params, MdpConfig cfg);

// One-step dominance check against the solved table: for every state with
// battery in [1, b_max] and incomplete info, and every interior rho, the
// split action's one-step value (continuations snapped down to the table
// grid, harvested fraction floored away) is no better than the ID action.
// Returns the worst k_id - k_split margin; <= 0 means dominance holds.
double max_split_advantage(const DecisionTable& table, std::span<const double> interior_rhos);

void write_csv(const MdpSolution& sol, std::ostream& out);

}  // namespace swipt

#endif
