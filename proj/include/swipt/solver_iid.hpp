#ifndef SWIPT_SOLVER_IID_HPP
#define SWIPT_SOLVER_IID_HPP

#include <iosfwd>

#include "swipt/model.hpp"

namespace swipt {

// Optimal no-split decision at a state. Tie means both actions give the same
// mean time to absorption; the optimal policy resolves ties to ID. None marks
// absorbing states where no further action is taken.
enum class Choice : std::uint8_t { EH, ID, Tie, None };

const char* to_string(Choice c);

// Minimum mean time to absorption and the optimal decision for every state
// (b, u) with battery b in 0..b_max and info level index u in 0..n_units.
// k values are constant in b past each row's boundary column, so battery
// lookups above b_max clamp.
class DecisionTable {
public:
    DecisionTable(const SystemParams& params, int b_max);

    const SystemParams& params() const { return params_; }
    const InfoGrid& grid() const { return grid_; }
    int b_max() const { return b_max_; }
    int n_units() const { return grid_.n_units(); }

    bool absorbing(int b, int u) const {
        return u == grid_.n_units() && b >= params_.decode_cost;
    }

    double k(int b, int u) const { return k_star_[index(b, u)]; }
    double k_id(int b, int u) const { return k_id_[index(b, u)]; }
    double k_eh(int b, int u) const { return k_eh_[index(b, u)]; }
    Choice decision(int b, int u) const { return choice_[index(b, u)]; }

    // Continuation lookup with battery clamped into the materialized range.
    double lookup_k(int b, int u) const;

    std::size_t index(int b, int u) const;

    // mutation used by the solver
    void set(int b, int u, double k, Choice c);
    void set_components(int b, int u, double kid, double keh);

private:
    SystemParams params_;
    InfoGrid grid_;
    int b_max_;
    std::vector<double> k_star_, k_id_, k_eh_;
    std::vector<Choice> choice_;
};

// Mean time to absorption when the message is fully accumulated (m = R1) and
// only harvesting remains: i/lambda GOOD slots with i = ceil((E_d - b)/e).
// Throws InfeasibleChannel when lambda = 0. Zero for battery >= E_d.
double k_full_info(double battery, const SystemParams& params);

// Mean time to absorption at the energy-surplus boundary states
// (E_d + j, R1 - j units): the partial geometric sum over j BAD slots.
// Also valid for any larger battery at the same info level.
double k_surplus(int j, double lambda);

// Fills the whole table by backward recursion over info levels and battery,
// seeded by the two closed forms above.
DecisionTable solve_iid(const SystemParams& params);

struct KComponents {
    double k_id = 0.0;
    double k_eh = 0.0;
};

// Recomputes both one-step action values at (b, u) from the solved table.
// Requires b >= 1 and u < n_units.
KComponents k_components(int b, int u, const DecisionTable& table);

// CSV with columns b, m_bits, k_star, k_id, k_eh, rho_star.
void write_csv(const DecisionTable& table, std::ostream& out);

}  // namespace swipt

#endif
