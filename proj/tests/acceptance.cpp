// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run directly or through ctest; `swipt-harq reproduce` exercises the same
// experiment checks from the command line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "swipt/experiments.hpp"
#include "swipt/mdp.hpp"

using namespace swipt;

namespace {

int failures = 0;

void line(int criterion, const std::string& what, bool pass) {
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SystemParams iid_params(int ed, int e, double r0, double r1, double lambda) {
    SystemParams p;
    p.decode_cost = ed;
    p.harvest_units = e;
    p.rate_bad = r0;
    p.rate_good = r1;
    p.channel = ChannelSpec::iid(lambda);
    return p;
}

SystemParams corr_params(int ed, int e, double r0, double r1, double l0, double l1) {
    SystemParams p = iid_params(ed, e, r0, r1, 0.5);
    p.channel = ChannelSpec::correlated(l0, l1);
    return p;
}

char buf[256];

const TableSpec& table_spec(const std::string& id) {
    for (const TableSpec& t : reference_tables())
        if (t.id == id) return t;
    throw std::logic_error("missing table spec");
}

// criteria 1-3: analytic regressions against the published rows
void criterion_table(int num, const std::string& id, double runtime_budget) {
    const TableSpec& spec = table_spec(id);
    const auto t0 = std::chrono::steady_clock::now();
    double max_dev = 0.0;
    std::vector<double> analytic(spec.swept_values.size());
    for (std::size_t i = 0; i < spec.swept_values.size(); ++i) {
        analytic[i] = solve_iid(spec.params_at(i)).k(0, 0);
        max_dev = std::max(max_dev, std::abs(analytic[i] - spec.expected_optimal[i]));
    }
    const double dt = seconds_since(t0);

    bool pass = max_dev <= spec.tolerance;
    std::string extra;
    if (runtime_budget > 0) {
        pass = pass && dt < runtime_budget;
        std::snprintf(buf, sizeof buf, ", runtime %.3fs < %.0fs", dt, runtime_budget);
        extra = buf;
    }
    if (num == 2) {
        // the hand-derived midpoint is exact, not just within print precision
        const double mid = analytic[4];
        pass = pass && std::abs(mid - 8.5) <= 1e-9;
        std::snprintf(buf, sizeof buf, ", lambda=0.5 -> %.12g (exact 8.5)", mid);
        extra += buf;
    }
    if (num == 3) {
        const bool plateaus = std::abs(analytic[3] - analytic[4]) <= 1e-12 &&
                              std::abs(analytic[5] - analytic[6]) <= 1e-12 &&
                              std::abs(analytic[6] - analytic[7]) <= 1e-12 &&
                              std::abs(analytic[7] - analytic[8]) <= 1e-12;
        pass = pass && plateaus;
        extra += plateaus ? ", plateau pairs exact" : ", plateau pairs BROKEN";
    }
    std::snprintf(buf, sizeof buf, "%s analytic row within %.0e (max dev %.2e)%s", id.c_str(),
                  spec.tolerance, max_dev, extra.c_str());
    line(num, buf, pass);
}

void criterion4_simple_arq() {
    const auto t0 = std::chrono::steady_clock::now();
    const SystemParams p = iid_params(5, 2, 5, 10, 0.5);
    const EstimateReport r = estimate(Policy::simple_arq(), p, 1'000'000, 0x5a5a5a);
    const double dt = seconds_since(t0);
    const double dev = std::abs(r.mean - 9.3310);
    const bool pass = dev <= 4.0 * r.stderr_ && dt < 60.0;
    std::snprintf(buf, sizeof buf,
                  "simple ARQ retained-overshoot mean %.4f vs 9.3310 (|dev| %.4f <= 4*%.4f), "
                  "runtime %.2fs",
                  r.mean, dev, r.stderr_, dt);
    line(4, buf, pass);
}

void criterion5_baseline_equivalence() {
    bool pass = true;
    double worst_sigmas = 0.0;
    std::string worst;
    const long long episodes = 200'000;
    for (const TableSpec& spec : reference_tables()) {
        for (std::size_t i = 0; i < spec.swept_values.size(); ++i) {
            const SystemParams p = spec.params_at(i);
            const double analytic = solve_iid(p).k(0, 0);
            std::size_t pi = 0;
            for (const Policy& pol : {Policy::battery_first(), Policy::information_first(),
                                      Policy::coin_toss()}) {
                const EstimateReport r = estimate(
                    pol, p, episodes, Rng::mix(0xbead, Rng::mix(i, pi) + 1000 * pi));
                const double sigmas = std::abs(r.mean - analytic) / r.stderr_;
                if (sigmas > worst_sigmas) {
                    worst_sigmas = sigmas;
                    std::snprintf(buf, sizeof buf, "%s[%s=%g] %s", spec.id.c_str(),
                                  spec.swept.c_str(), spec.swept_values[i], pol.name());
                    worst = buf;
                }
                pass = pass && sigmas <= 4.0;
                ++pi;
            }
        }
    }
    std::snprintf(buf, sizeof buf,
                  "BF/IF/CT match the optimum on all 27 columns (worst %.2f sigma at %s)",
                  worst_sigmas, worst.c_str());
    line(5, buf, pass);
}

void criterion6_no_split() {
    const std::vector<double> rhos = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const std::vector<SystemParams> matrix = {
        iid_params(5, 1, 1, 10, 0.5),  iid_params(5, 2, 5, 10, 0.5),
        iid_params(10, 1, 5, 10, 0.3), iid_params(10, 5, 5, 10, 0.3),
        iid_params(3, 1, 1, 3, 0.7),   iid_params(2, 2, 1, 2, 0.4),
        iid_params(4, 1, 3, 10, 0.6),  iid_params(6, 2, 2, 9, 0.25),
        iid_params(5, 3, 4, 10, 0.5),  iid_params(7, 1, 2, 8, 0.35),
        iid_params(3, 2, 3, 7, 0.8),   iid_params(1, 1, 1, 4, 0.9),
    };
    double worst = -1e300;
    for (const SystemParams& p : matrix)
        worst = std::max(worst, max_split_advantage(solve_iid(p), rhos));
    const bool dominance = worst <= 1e-12;

    MdpConfig cfg;
    cfg.rho_grid = MdpConfig::uniform_rho_grid(11);
    const double gap1 = no_split_gap(iid_params(3, 1, 1, 3, 0.5), cfg);
    const double gap2 = no_split_gap(iid_params(2, 1, 1, 2, 0.6), cfg);
    const bool gaps = gap1 <= 0.02 && gap2 <= 0.02;

    std::snprintf(buf, sizeof buf,
                  "one-step split advantage <= 0 over %zu parameter sets (worst %.2e); "
                  "value-iteration no-split gap %.2e, %.2e <= 0.02",
                  matrix.size(), worst, gap1, gap2);
    line(6, buf, dominance && gaps);
}

void criterion7_closed_forms() {
    Rng rng(0xc1a55e5);
    double worst = 0.0;
    int draws = 0;
    for (int rep = 0; rep < 120; ++rep) {
        const int ed = 1 + static_cast<int>(rng.next_u64() % 6);
        const int e = 1 + static_cast<int>(rng.next_u64() % 3);
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);
        const double r0 = 0.5 + 2.0 * rng.next_unit();
        const double r1 =
            std::max(rng.next_unit() < 0.5 ? n * r0 : (n - 0.9 * rng.next_unit()) * r0, r0);
        const double lam = 0.05 + 0.9 * rng.next_unit();

        const SystemParams pi = iid_params(ed, e, r0, r1, lam);
        const DecisionTable ti = solve_iid(pi);
        for (int b = 0; b < ed; ++b)
            worst = std::max(worst, std::abs(ti.k(b, ti.n_units()) - k_full_info(b, pi)));
        for (int j = 1; j <= ti.n_units(); ++j)
            worst =
                std::max(worst, std::abs(ti.k(ed + j, ti.n_units() - j) - k_surplus(j, lam)));

        const double l0 = 0.05 + 0.9 * rng.next_unit();
        const double l1 = 0.05 + 0.9 * rng.next_unit();
        const SystemParams pc = corr_params(ed, e, r0, r1, l0, l1);
        const DecisionTable3D tc = solve_corr(pc);
        for (int g = 0; g <= 1; ++g) {
            for (int b = 0; b < ed; ++b)
                worst = std::max(
                    worst, std::abs(tc.k(b, tc.n_units(), g) - k_full_info_corr(b, g, pc)));
            for (int j = 1; j <= tc.n_units(); ++j)
                worst = std::max(worst, std::abs(tc.k(ed + j, tc.n_units() - j, g) -
                                                 k_surplus_corr(j, g, pc)));
        }
        ++draws;
    }
    // unit-step interior identity, the affine closed form one info level below
    for (double lam : {0.2, 0.4, 0.6, 0.8}) {
        for (int ed : {1, 2, 3, 5, 8}) {
            const SystemParams p = iid_params(ed, 1, 1, 6, lam);
            const DecisionTable t = solve_iid(p);
            for (int i = 1; i <= ed; ++i)
                worst = std::max(worst, std::abs(t.k(i - 1, t.n_units() - 1) -
                                                 (1.0 + (ed - i + 2) / lam)));
            ++draws;
        }
    }
    std::snprintf(buf, sizeof buf,
                  "closed forms embedded in solver tables over %d draws (worst dev %.2e)",
                  draws, worst);
    line(7, buf, worst <= 1e-12);
}

void criterion8_oracle() {
    double worst = 0.0;
    int instances = 0;
    for (int ed = 1; ed <= 3; ++ed) {
        for (int e = 1; e <= 2; ++e) {
            for (int n = 1; n <= 3; ++n) {
                for (double r0 : {1.0, 2.0}) {
                    const double r1 = std::max((n - 0.5) * r0, r0);  // ragged last step
                    for (int model = 0; model < 2; ++model) {
                        if (model == 0) {
                            const SystemParams p = iid_params(ed, e, r0, r1, 0.45);
                            const DecisionTable t = solve_iid(p);
                            const OracleResult k = oracle_k(p, Policy::optimal(t));
                            for (int b = 0; b <= t.b_max(); ++b)
                                for (int u = 0; u <= t.n_units(); ++u)
                                    worst =
                                        std::max(worst, std::abs(k.at(b, u) - t.k(b, u)));
                        } else {
                            const SystemParams p = corr_params(ed, e, r0, r1, 0.3, 0.6);
                            const DecisionTable3D t = solve_corr(p);
                            const OracleResult k = oracle_k(p, Policy::optimal(t));
                            for (int b = 0; b <= t.b_max(); ++b)
                                for (int u = 0; u <= t.n_units(); ++u)
                                    for (int g = 0; g <= 1; ++g)
                                        worst = std::max(
                                            worst, std::abs(k.at(b, u, g) - t.k(b, u, g)));
                        }
                        ++instances;
                    }
                }
            }
        }
    }
    std::snprintf(
        buf, sizeof buf,
        "fundamental-matrix oracle matches both solvers on %d small instances (worst %.2e)",
        instances, worst);
    line(8, buf, worst <= 1e-9);
}

void criterion9_degeneration() {
    double worst = 0.0;
    for (double r0 = 1; r0 <= 9; ++r0) {
        const SystemParams pi = iid_params(5, 1, r0, 10, 0.5);
        const SystemParams pc = corr_params(5, 1, r0, 10, 0.5, 0.5);
        const DecisionTable ti = solve_iid(pi);
        const DecisionTable3D tc = solve_corr(pc);
        for (int b = 0; b <= ti.b_max(); ++b)
            for (int u = 0; u <= ti.n_units(); ++u)
                for (int g = 0; g <= 1; ++g)
                    worst = std::max(worst, std::abs(tc.k(b, u, g) - ti.k(b, u)));
    }
    std::snprintf(buf, sizeof buf,
                  "equal-lambda correlated solver degenerates to i.i.d. (worst dev %.2e)",
                  worst);
    line(9, buf, worst <= 1e-12);
}

void criterion10_figures() {
    const long long episodes = 100'000;
    bool dominance = true, monotone = true;
    std::vector<FigureRun> runs;
    for (const FigureSpec& spec : figure_sweeps()) {
        FigureRun run = run_figure(spec, episodes, 0xf16);
        dominance = dominance && run.dominance_pass;
        monotone = monotone && run.monotone_pass;
        runs.push_back(std::move(run));
    }
    line(10, "steady-state-averaged optimum <= every baseline (4 sigma) at every sweep point",
         dominance);
    line(10, "analytic optimal curves non-increasing along every sweep", monotone);

    // negative-correlation gap dominance: sweep means for the R0 and e sweeps,
    // the matched configs at lambda = 0.7 for the channel-quality sweep
    const double f3 = mean_bf_gap(runs[0]) - mean_bf_gap(runs[1]);
    const double f5 = mean_bf_gap(runs[4]) - mean_bf_gap(runs[5]);
    const double g4n = runs[2].bf_exact[6] - runs[2].optimal[6];
    const double g4p = runs[3].bf_exact[6] - runs[3].optimal[6];
    std::snprintf(buf, sizeof buf,
                  "optimal-vs-BF gap larger under negative correlation (fig3 +%.3f, fig4 "
                  "%.3f>%.3f, fig5 +%.3f)",
                  f3, g4n, g4p, f5);
    line(10, buf, f3 > 0.0 && f5 > 0.0 && g4n > g4p);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_table(1, "table1", 1.0);
    criterion_table(2, "table2", 0.0);
    criterion_table(3, "table3", 0.0);
    criterion4_simple_arq();
    criterion5_baseline_equivalence();
    criterion6_no_split();
    criterion7_closed_forms();
    criterion8_oracle();
    criterion9_degeneration();
    criterion10_figures();
    std::printf("%s (%d failed, %.1fs)\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES",
                failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
