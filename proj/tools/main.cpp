#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "swipt/experiments.hpp"
#include "swipt/svg.hpp"

namespace fs = std::filesystem;
using namespace swipt;

namespace {

struct ParamFlags {
    int ed = 5;
    int e = 1;
    double r0 = 1.0;
    double r1 = 10.0;
    double lambda = 0.5;
    std::optional<double> lambda0;
    std::optional<double> lambda1;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--Ed", f.ed, "Decode-attempt energy cost (integer units)");
    cmd->add_option("--e", f.e, "Energy harvested per GOOD slot (integer units)");
    cmd->add_option("--R0", f.r0, "BAD-state rate, bits/slot");
    cmd->add_option("--R1", f.r1, "GOOD-state rate = encoding rate, bits/slot");
    cmd->add_option("--lambda", f.lambda, "GOOD probability (i.i.d. channel)");
    cmd->add_option("--lambda0", f.lambda0, "Pr[GOOD | previous BAD] (correlated channel)");
    cmd->add_option("--lambda1", f.lambda1, "Pr[GOOD | previous GOOD] (correlated channel)");
}

SystemParams build_params(const ParamFlags& f) {
    SystemParams p;
    p.decode_cost = f.ed;
    p.harvest_units = f.e;
    p.rate_bad = f.r0;
    p.rate_good = f.r1;
    if (f.lambda0 || f.lambda1) {
        if (!(f.lambda0 && f.lambda1))
            throw ConfigError("--lambda0 and --lambda1 must be given together");
        p.channel = ChannelSpec::correlated(*f.lambda0, *f.lambda1);
    } else {
        p.channel = ChannelSpec::iid(f.lambda);
    }
    p.validate();
    return p;
}

fs::path default_outdir() {
    if (const char* env = std::getenv("SWIPT_HARQ_OUTDIR")) return fs::path(env);
    return fs::path(".");
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

// Policies are views over solver tables; this bundle keeps the tables alive.
struct PolicySet {
    std::optional<DecisionTable> table;
    std::optional<DecisionTable3D> table3;

    Policy make(const std::string& name, const SystemParams& params, double bernoulli_p) {
        if (name == "optimal") {
            if (params.channel.is_iid()) {
                table.emplace(solve_iid(params));
                return Policy::optimal(*table);
            }
            table3.emplace(solve_corr(params));
            return Policy::optimal(*table3);
        }
        if (name == "bf") return Policy::battery_first();
        if (name == "if") return Policy::information_first();
        if (name == "ct") return Policy::coin_toss();
        if (name == "bernoulli") return Policy::bernoulli(bernoulli_p);
        if (name == "simple-arq") return Policy::simple_arq();
        throw ConfigError("unknown policy '" + name + "'");
    }
};

double analytic_start_value(const SystemParams& params) {
    if (params.channel.is_iid()) return solve_iid(params).k(0, 0);
    return steady_average_k(solve_corr(params), 0, 0);
}

void write_figure_svg(const FigureRun& run, const fs::path& path) {
    std::vector<SvgSeries> series;
    series.push_back({"optimal (analytic)", run.x, run.optimal});
    for (const FigureSeries& s : run.mc) series.push_back({s.name + " (MC)", run.x, s.mean});
    std::ofstream out = open_out(path);
    write_svg_chart(run.spec.id, run.spec.swept, "mean slots to decode", series, out);
}

bool report(const std::string& what, bool pass) {
    std::cout << (pass ? "PASS  " : "FAIL  ") << what << '\n';
    return pass;
}

int cmd_solve(const ParamFlags& flags, bool correlated, const std::string& out_file) {
    ParamFlags f = flags;
    if (correlated) {
        if (!f.lambda0) f.lambda0 = 0.5;
        if (!f.lambda1) f.lambda1 = 0.5;
    } else if (f.lambda0 || f.lambda1) {
        throw ConfigError("solve-iid expects --lambda, not --lambda0/--lambda1");
    }
    const SystemParams params = build_params(f);

    double start;
    if (correlated) {
        const DecisionTable3D t = solve_corr(params);
        start = steady_average_k(t, 0, 0);
        if (out_file.empty()) {
            write_csv(t, std::cout);
        } else {
            std::ofstream out = open_out(out_file);
            write_csv(t, out);
        }
    } else {
        const DecisionTable t = solve_iid(params);
        start = t.k(0, 0);
        if (out_file.empty()) {
            write_csv(t, std::cout);
        } else {
            std::ofstream out = open_out(out_file);
            write_csv(t, out);
        }
    }
    std::ostream& info = out_file.empty() ? std::cerr : std::cout;
    info.precision(10);
    info << "k(0,0) = " << start << '\n';
    return 0;
}

int cmd_simulate(const ParamFlags& flags, const std::string& policy_name, double bernoulli_p,
                 long long episodes, std::uint64_t seed, long long cap,
                 const std::string& out_file) {
    const SystemParams params = build_params(flags);
    PolicySet set;
    const Policy policy = set.make(policy_name, params, bernoulli_p);
    SimOptions opts;
    opts.slot_cap = cap;
    const EstimateReport r = estimate(policy, params, episodes, seed, opts);

    auto emit = [&](std::ostream& out) {
        write_csv_header(out);
        write_csv_row(policy, params, r, out);
    };
    if (out_file.empty()) {
        emit(std::cout);
    } else {
        std::ofstream out = open_out(out_file);
        emit(out);
        std::cout.precision(10);
        std::cout << policy_name << ": mean " << r.mean << " +- " << r.stderr_ << " ("
                  << r.episodes << " episodes)\n";
    }
    if (r.censored > 0)
        std::cerr << "warning: " << r.censored
                  << " episodes hit the slot cap and were excluded from the mean\n";
    return 0;
}

void apply_overrides(SystemParams& base, const ParamFlags& f, const CLI::App* cmd) {
    if (cmd->count("--Ed")) base.decode_cost = f.ed;
    if (cmd->count("--e")) base.harvest_units = f.e;
    if (cmd->count("--R0")) base.rate_bad = f.r0;
    if (cmd->count("--R1")) base.rate_good = f.r1;
    if (cmd->count("--lambda")) base.channel = ChannelSpec::iid(f.lambda);
    if (cmd->count("--lambda0"))
        base.channel = ChannelSpec::correlated(*f.lambda0, base.channel.lambda1);
    if (cmd->count("--lambda1"))
        base.channel = ChannelSpec::correlated(base.channel.lambda0, *f.lambda1);
}

const TableSpec& find_table(const std::string& id) {
    for (const TableSpec& t : reference_tables())
        if (t.id == id) return t;
    throw ConfigError("unknown table id " + id);
}

const FigureSpec& find_figure(const std::string& id) {
    for (const FigureSpec& f : figure_sweeps())
        if (f.id == id) return f;
    throw ConfigError("unknown figure id " + id);
}

bool run_and_report_table(const std::string& id, const ParamFlags& f, const CLI::App* cmd,
                          long long episodes, std::uint64_t seed, const fs::path& outdir) {
    TableSpec spec = find_table(id);
    apply_overrides(spec.base, f, cmd);
    const TableRun run = run_table(spec, episodes, seed);
    std::ofstream out = open_out(outdir / (id + ".csv"));
    write_csv(run, out);
    std::cout << "wrote " << (outdir / (id + ".csv")).string() << '\n';

    char line[160];
    std::snprintf(line, sizeof line, "%s: analytic row within %.0e (max dev %.2e)", id.c_str(),
                  spec.tolerance, run.max_analytic_dev);
    bool ok = report(line, run.analytic_pass);
    ok &= report(id + ": BF/IF/CT sample means within 4 sigma of the analytic optimum",
                 run.equivalence_pass);
    return ok;
}

bool run_and_report_figure_pair(const std::string& id, const ParamFlags& f, const CLI::App* cmd,
                                long long episodes, std::uint64_t seed, const fs::path& outdir,
                                const std::string& format) {
    FigureSpec neg = find_figure(id + "a");
    FigureSpec pos = find_figure(id + "b");
    apply_overrides(neg.base, f, cmd);
    apply_overrides(pos.base, f, cmd);

    bool ok = true;
    std::vector<FigureRun> runs;
    for (const FigureSpec& spec : {neg, pos}) {
        FigureRun run = run_figure(spec, episodes, seed);
        std::ofstream out = open_out(outdir / (spec.id + ".csv"));
        write_csv(run, out);
        std::cout << "wrote " << (outdir / (spec.id + ".csv")).string() << '\n';
        if (format == "svg") {
            write_figure_svg(run, outdir / (spec.id + ".svg"));
            std::cout << "wrote " << (outdir / (spec.id + ".svg")).string() << '\n';
        }
        ok &= report(spec.id + ": optimal within 4 sigma below every baseline, pointwise",
                     run.dominance_pass);
        ok &= report(spec.id + ": analytic optimal curve non-increasing", run.monotone_pass);
        runs.push_back(std::move(run));
    }

    char line[160];
    if (id == "fig4") {
        // the two sweeps cross the reference correlation configs at x = 0.7
        const std::size_t i = 6;
        const double gap_neg = runs[0].bf_exact[i] - runs[0].optimal[i];
        const double gap_pos = runs[1].bf_exact[i] - runs[1].optimal[i];
        std::snprintf(line, sizeof line,
                      "%s: optimal-vs-BF gap larger under negative correlation (%.4f > %.4f)",
                      id.c_str(), gap_neg, gap_pos);
        ok &= report(line, gap_neg > gap_pos);
    } else {
        const double gap_neg = mean_bf_gap(runs[0]);
        const double gap_pos = mean_bf_gap(runs[1]);
        std::snprintf(
            line, sizeof line,
            "%s: sweep-mean optimal-vs-BF gap larger under negative correlation (%.4f > %.4f)",
            id.c_str(), gap_neg, gap_pos);
        ok &= report(line, gap_neg > gap_pos);
    }
    return ok;
}

int cmd_reproduce(const std::string& id, const ParamFlags& f, const CLI::App* cmd,
                  long long episodes, std::uint64_t seed, const std::string& outdir_flag,
                  const std::string& format, const std::vector<std::string>& policies,
                  double bernoulli_p) {
    const fs::path outdir = outdir_flag.empty() ? default_outdir() : fs::path(outdir_flag);
    fs::create_directories(outdir);

    if (id == "table1" || id == "table2" || id == "table3")
        return run_and_report_table(id, f, cmd, episodes, seed, outdir) ? 0 : 2;
    if (id == "fig3" || id == "fig4" || id == "fig5")
        return run_and_report_figure_pair(id, f, cmd, episodes, seed, outdir, format) ? 0 : 2;

    if (id == "custom") {
        const SystemParams params = build_params(f);
        const double analytic = analytic_start_value(params);
        std::ofstream out = open_out(outdir / "custom.csv");
        out.precision(12);
        out << "policy,analytic_optimal,mc_mean,mc_stderr,episodes,seed\n";
        for (std::size_t i = 0; i < policies.size(); ++i) {
            PolicySet set;
            const Policy pol = set.make(policies[i], params, bernoulli_p);
            const EstimateReport r = estimate(pol, params, episodes, Rng::mix(seed, i));
            out << policies[i] << ',' << analytic << ',' << r.mean << ',' << r.stderr_ << ','
                << r.episodes << ',' << seed << '\n';
        }
        std::cout << "wrote " << (outdir / "custom.csv").string() << '\n';
        return 0;
    }
    throw ConfigError("unknown experiment id '" + id + "'");
}

int cmd_sweep(const ParamFlags& f, const std::string& param, std::vector<double> values,
              double from, double to, double step_size,
              const std::vector<std::string>& policies, double bernoulli_p,
              long long episodes, std::uint64_t seed, const std::string& outdir_flag,
              const std::string& format, const std::string& name) {
    if (values.empty()) {
        if (!(step_size > 0) || to < from)
            throw ConfigError("sweep needs --values or a valid --from/--to/--step range");
        for (double x = from; x <= to + 1e-9; x += step_size) values.push_back(x);
    }
    const fs::path outdir = outdir_flag.empty() ? default_outdir() : fs::path(outdir_flag);
    fs::create_directories(outdir);

    ParamFlags ff = f;
    if (param == "lambda0") {
        if (!ff.lambda1) throw ConfigError("sweeping lambda0 needs a fixed --lambda1");
        if (!ff.lambda0) ff.lambda0 = 0.5;  // placeholder, replaced per sweep point
    } else if (param == "lambda1") {
        if (!ff.lambda0) throw ConfigError("sweeping lambda1 needs a fixed --lambda0");
        if (!ff.lambda1) ff.lambda1 = 0.5;
    }
    const SystemParams base = build_params(ff);

    std::vector<double> analytic(values.size());
    std::vector<std::vector<EstimateReport>> rows(policies.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const SystemParams p = with_swept(base, param, values[i]);
        p.validate();
        analytic[i] = analytic_start_value(p);
        for (std::size_t j = 0; j < policies.size(); ++j) {
            PolicySet set;
            const Policy pol = set.make(policies[j], p, bernoulli_p);
            rows[j].push_back(estimate(pol, p, episodes, Rng::mix(Rng::mix(seed, i), j)));
        }
    }

    const fs::path csv_path = outdir / (name + ".csv");
    std::ofstream out = open_out(csv_path);
    out.precision(12);
    out << param << ",optimal_analytic";
    for (const std::string& pn : policies) out << ',' << pn << "_mc," << pn << "_mc_stderr";
    out << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << values[i] << ',' << analytic[i];
        for (std::size_t j = 0; j < policies.size(); ++j)
            out << ',' << rows[j][i].mean << ',' << rows[j][i].stderr_;
        out << '\n';
    }
    std::cout << "wrote " << csv_path.string() << '\n';

    if (format == "svg") {
        std::vector<SvgSeries> series;
        series.push_back({"optimal (analytic)", values, analytic});
        for (std::size_t j = 0; j < policies.size(); ++j) {
            SvgSeries s{policies[j] + " (MC)", values, {}};
            for (const EstimateReport& r : rows[j]) s.y.push_back(r.mean);
            series.push_back(std::move(s));
        }
        const fs::path svg_path = outdir / (name + ".svg");
        std::ofstream svg = open_out(svg_path);
        write_svg_chart(name, param, "mean slots to decode", series, svg);
        std::cout << "wrote " << svg_path.string() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Minimum expected retransmissions for a wirelessly powered HARQ receiver over "
        "two-state channels: exact solvers, baseline policies, and a Monte Carlo link "
        "simulator."};
    app.set_config("--config", "", "INI config file; sections mirror the subcommands");
    app.require_subcommand(1);

    ParamFlags solve_flags;
    std::string solve_out;
    CLI::App* solve_iid_cmd =
        app.add_subcommand("solve-iid", "Solve the i.i.d. channel model, emit the table");
    add_param_flags(solve_iid_cmd, solve_flags);
    solve_iid_cmd->add_option("--out", solve_out, "CSV output file (default: stdout)");
    CLI::App* solve_corr_cmd = app.add_subcommand(
        "solve-corr", "Solve the correlated channel model, emit the table");
    add_param_flags(solve_corr_cmd, solve_flags);
    solve_corr_cmd->add_option("--out", solve_out, "CSV output file (default: stdout)");

    ParamFlags sim_flags;
    std::string sim_policy = "optimal";
    double sim_p = 0.1;
    long long sim_episodes = 1'000'000;
    std::uint64_t sim_seed = 1;
    long long sim_cap = 1'000'000'000LL;
    std::string sim_out;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Monte Carlo estimate for one policy and parameter set");
    add_param_flags(sim_cmd, sim_flags);
    sim_cmd->add_option("--policy", sim_policy,
                        "optimal | bf | if | ct | bernoulli | simple-arq");
    sim_cmd->add_option("--p", sim_p, "Bernoulli harvest probability");
    sim_cmd->add_option("--episodes", sim_episodes, "Episode count")
        ->check(CLI::Range(2LL, 1'000'000'000LL));
    sim_cmd->add_option("--seed", sim_seed, "Master seed");
    sim_cmd->add_option("--cap", sim_cap, "Per-episode slot cap");
    sim_cmd->add_option("--out", sim_out, "CSV output file (default: stdout)");

    ParamFlags rep_flags;
    std::string rep_id;
    long long rep_episodes = 1'000'000;
    std::uint64_t rep_seed = 20240817;
    std::string rep_out;
    std::string rep_format = "csv";
    std::vector<std::string> rep_policies = {"optimal", "bf", "if", "ct", "bernoulli",
                                             "simple-arq"};
    double rep_p = 0.1;
    CLI::App* rep_cmd = app.add_subcommand(
        "reproduce", "Regenerate a bundled reference experiment and verify it");
    add_param_flags(rep_cmd, rep_flags);
    rep_cmd->add_option("--experiment", rep_id,
                        "table1 | table2 | table3 | fig3 | fig4 | fig5 | custom")
        ->required();
    rep_cmd->add_option("--episodes", rep_episodes, "Episodes per Monte Carlo point");
    rep_cmd->add_option("--seed", rep_seed, "Master seed");
    rep_cmd->add_option("--out", rep_out,
                        "Output directory (default: $SWIPT_HARQ_OUTDIR or .)");
    rep_cmd->add_option("--format", rep_format, "csv | svg (figures also emit a chart)")
        ->check(CLI::IsMember({"csv", "svg"}));
    rep_cmd->add_option("--policies", rep_policies, "Policies for the custom experiment");
    rep_cmd->add_option("--p", rep_p, "Bernoulli harvest probability");

    ParamFlags sweep_flags;
    std::string sweep_param = "lambda";
    std::vector<double> sweep_values;
    double sweep_from = 0.1, sweep_to = 0.9, sweep_step = 0.1;
    std::vector<std::string> sweep_policies = {"bf", "if", "ct"};
    double sweep_p = 0.1;
    long long sweep_episodes = 100'000;
    std::uint64_t sweep_seed = 1;
    std::string sweep_out, sweep_name = "sweep";
    std::string sweep_format = "csv";
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Sweep one parameter for a set of policies");
    add_param_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--param", sweep_param, "R0 | e | lambda | lambda0 | lambda1");
    sweep_cmd->add_option("--values", sweep_values, "Explicit sweep values");
    sweep_cmd->add_option("--from", sweep_from, "Range start");
    sweep_cmd->add_option("--to", sweep_to, "Range end");
    sweep_cmd->add_option("--step", sweep_step, "Range step");
    sweep_cmd->add_option("--policies", sweep_policies, "Policies to simulate");
    sweep_cmd->add_option("--p", sweep_p, "Bernoulli harvest probability");
    sweep_cmd->add_option("--episodes", sweep_episodes, "Episodes per point");
    sweep_cmd->add_option("--seed", sweep_seed, "Master seed");
    sweep_cmd->add_option("--out", sweep_out, "Output directory");
    sweep_cmd->add_option("--name", sweep_name, "Output file base name");
    sweep_cmd->add_option("--format", sweep_format, "csv | svg")
        ->check(CLI::IsMember({"csv", "svg"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve_iid_cmd->parsed()) return cmd_solve(solve_flags, false, solve_out);
        if (solve_corr_cmd->parsed()) return cmd_solve(solve_flags, true, solve_out);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_flags, sim_policy, sim_p, sim_episodes, sim_seed, sim_cap,
                                sim_out);
        if (rep_cmd->parsed())
            return cmd_reproduce(rep_id, rep_flags, rep_cmd, rep_episodes, rep_seed, rep_out,
                                 rep_format, rep_policies, rep_p);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_flags, sweep_param, sweep_values, sweep_from, sweep_to,
                             sweep_step, sweep_policies, sweep_p, sweep_episodes, sweep_seed,
                             sweep_out, sweep_format, sweep_name);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const InfeasibleChannel& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const DegenerateChain& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
