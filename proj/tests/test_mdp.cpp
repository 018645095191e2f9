#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swipt/mdp.hpp"

using namespace swipt;

namespace {

SystemParams iid_params(int ed, int e, double r0, double r1, double lambda) {
    SystemParams p;
    p.decode_cost = ed;
    p.harvest_units = e;
    p.rate_bad = r0;
    p.rate_good = r1;
    p.channel = ChannelSpec::iid(lambda);
    return p;
}

}  // namespace

TEST_CASE("config validation") {
    MdpConfig cfg;
    cfg.rho_grid = {0.0, 0.5};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);  // missing endpoint 1
    cfg.rho_grid = {0.0, 0.5, 1.0};
    cfg.b_cap = 4;
    cfg.m_step = 1;
    CHECK_NOTHROW(cfg.validate());
    cfg.beta = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("absorbing states hold value zero and costs stay bounded") {
    const SystemParams p = iid_params(2, 1, 1, 2, 0.5);
    MdpConfig cfg;
    cfg.rho_grid = MdpConfig::uniform_rho_grid(11);
    const MdpSolution sol = value_iteration(p, cfg);
    CHECK(sol.converged);
    for (std::size_t ib = 0; ib < sol.b_levels.size(); ++ib) {
        for (std::size_t im = 0; im < sol.m_levels.size(); ++im) {
            const double v = sol.value(ib, im);
            if (sol.b_levels[ib] >= p.decode_cost && sol.m_levels[im] >= p.rate_good) {
                CHECK(v == 0.0);
            } else {
                CHECK(v < 0.0);
            }
            CHECK(-v <= 1.0 / (1.0 - cfg.beta) + 1e-9);
        }
    }
}

TEST_CASE("sweep residuals contract monotonically") {
    const SystemParams p = iid_params(3, 1, 1, 3, 0.5);
    MdpConfig cfg;
    cfg.rho_grid = MdpConfig::uniform_rho_grid(11);
    cfg.tol = 1e-10;
    // re-run with increasing sweep budgets; the final residual must shrink
    double last = std::numeric_limits<double>::infinity();
    for (int sweeps : {5, 10, 20, 40}) {
        MdpConfig c = cfg;
        c.max_sweeps = sweeps;
        const MdpSolution sol = value_iteration(p, c);
        CHECK(sol.residual <= last + 1e-15);
        last = sol.residual;
    }
}

TEST_CASE("greedy policy sticks to the endpoints") {
    const SystemParams p = iid_params(3, 1, 1, 3, 0.5);
    MdpConfig cfg;
    cfg.rho_grid = MdpConfig::uniform_rho_grid(11);
    const MdpSolution sol = value_iteration(p, cfg);
    for (double r : sol.policy_rho) CHECK((r == 0.0 || r == 1.0));
}

TEST_CASE("interior split ratios never improve the value") {
    const SystemParams p = iid_params(3, 1, 1, 3, 0.5);
    MdpConfig cfg;
    cfg.rho_grid = MdpConfig::uniform_rho_grid(11);
    const double gap = no_split_gap(p, cfg);
    CHECK(gap >= -1e-9);  // binary actions are a subset of the full grid
    CHECK(gap <= 0.02);
}

TEST_CASE("one-step split dominance is exact on the solved table") {
    const std::vector<double> rhos = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (const SystemParams& p :
         {iid_params(5, 1, 1, 10, 0.5), iid_params(5, 2, 5, 10, 0.5),
          iid_params(10, 3, 5, 10, 0.3), iid_params(2, 2, 1, 2, 0.4),
          iid_params(3, 2, 3, 7, 0.8)}) {
        const DecisionTable t = solve_iid(p);
        CHECK(max_split_advantage(t, rhos) <= 1e-12);
    }
}

TEST_CASE("near-undiscounted values order states like the absorption times") {
    const SystemParams p = iid_params(2, 1, 1, 2, 0.5);
    MdpConfig cfg;
    cfg.beta = 0.999;
    cfg.tol = 1e-10;
    cfg.rho_grid = {0.0, 1.0};
    const MdpSolution sol = value_iteration(p, cfg);
    const DecisionTable t = solve_iid(p);

    struct Entry {
        double cost;
        double k;
    };
    std::vector<Entry> entries;
    for (std::size_t ib = 0; ib < sol.b_levels.size(); ++ib) {
        const int b = static_cast<int>(sol.b_levels[ib]);
        for (std::size_t im = 0; im < sol.m_levels.size(); ++im) {
            const int u = t.grid().floor_index(sol.m_levels[im]);
            if (b > t.b_max()) continue;
            entries.push_back({-sol.value(ib, im), t.k(b, u)});
        }
    }
    for (const Entry& a : entries)
        for (const Entry& b : entries)
            if (a.k < b.k - 1e-9) CHECK(a.cost < b.cost + 1e-6);
}

TEST_CASE("csv dump") {
    const SystemParams p = iid_params(1, 1, 1, 1, 0.5);
    MdpConfig cfg;
    cfg.rho_grid = {0.0, 1.0};
    const MdpSolution sol = value_iteration(p, cfg);
    std::ostringstream out;
    write_csv(sol, out);
    CHECK(out.str().find("b,m_bits,value,rho") == 0);
}
