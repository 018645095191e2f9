#ifndef SWIPT_SOLVER_CORR_HPP
#define SWIPT_SOLVER_CORR_HPP

#include <iosfwd>

#include "swipt/solver_iid.hpp"

namespace swipt {

// Decision table over the extended state (b, u, G) where G is the previous
// slot's channel state. Same clamping convention as DecisionTable.
class DecisionTable3D {
public:
    DecisionTable3D(const SystemParams& params, int b_max);

    const SystemParams& params() const { return params_; }
    const InfoGrid& grid() const { return grid_; }
    int b_max() const { return b_max_; }
    int n_units() const { return grid_.n_units(); }

    bool absorbing(int b, int u) const {
        return u == grid_.n_units() && b >= params_.decode_cost;
    }

    double k(int b, int u, int g) const { return k_star_[index(b, u, g)]; }
    double k_id(int b, int u, int g) const { return k_id_[index(b, u, g)]; }
    double k_eh(int b, int u, int g) const { return k_eh_[index(b, u, g)]; }
    Choice decision(int b, int u, int g) const { return choice_[index(b, u, g)]; }

    double lookup_k(int b, int u, int g) const;

    std::size_t index(int b, int u, int g) const;

    void set(int b, int u, int g, double k, Choice c);
    void set_components(int b, int u, int g, double kid, double keh);

private:
    SystemParams params_;
    InfoGrid grid_;
    int b_max_;
    std::vector<double> k_star_, k_id_, k_eh_;
    std::vector<Choice> choice_;
};

// Closed form for m = R1 states under the correlated channel, conditioned on
// the previous slot's state. Throws InfeasibleChannel when lambda0 = 0.
double k_full_info_corr(double battery, int prev_good, const SystemParams& params);

// Energy-surplus boundary states (E_d + j, R1 - j units, G); valid for any
// larger battery at the same info level.
double k_surplus_corr(int j, int prev_good, const SystemParams& params);

// Backward recursion over (info level, battery) filling both G slices; the
// G=0 slice of a state is finalized before the G=1 slice, whose harvest
// branch on a BAD slot lands in that same-state slice.
DecisionTable3D solve_corr(const SystemParams& params);

KComponents k_components_corr(int b, int u, int g, const DecisionTable3D& table);

// phi0 * k(b,u,0) + phi1 * k(b,u,1): mean over the stationary channel state.
double steady_average_k(const DecisionTable3D& table, int b, int u);

// CSV with columns b, m_bits, G, k_star, k_id, k_eh, rho_star.
void write_csv(const DecisionTable3D& table, std::ostream& out);

}  // namespace swipt

#endif
