#ifndef SWIPT_EXPERIMENTS_HPP
#define SWIPT_EXPERIMENTS_HPP

#include <string>

#include "swipt/mdp.hpp"
#include "swipt/simulate.hpp"

namespace swipt {

// One bundled regression table: a single-parameter sweep with the published
// reference row for the optimal analytical value at every column.
struct TableSpec {
    std::string id;
    std::string swept;  // "R0" | "lambda" | "e"
    SystemParams base;
    std::vector<double> swept_values;
    std::vector<double> expected_optimal;
    double tolerance = 5e-4;

    SystemParams params_at(std::size_t i) const;
};

// One bundled figure sweep over a correlated channel.
struct FigureSpec {
    std::string id;
    std::string swept;  // "R0" | "lambda0" | "lambda1" | "e"
    SystemParams base;
    std::vector<double> swept_values;
    double bernoulli_p = 0.1;

    SystemParams params_at(std::size_t i) const;
};

const std::vector<TableSpec>& reference_tables();
const std::vector<FigureSpec>& figure_sweeps();

// Returns params with one named field ("R0", "e", "lambda", "lambda0",
// "lambda1") replaced; the backbone of every sweep here.
SystemParams with_swept(SystemParams base, const std::string& name, double value);

struct PolicyCell {
    double mean = 0.0;
    double stderr_ = 0.0;
};

struct TableRun {
    TableSpec spec;
    std::vector<double> analytic;
    std::vector<std::pair<std::string, std::vector<PolicyCell>>> mc;
    double max_analytic_dev = 0.0;
    bool analytic_pass = false;
    // BF/IF/CT sample means within 4 standard errors of the analytic optimum
    bool equivalence_pass = false;
    long long episodes = 0;
    std::uint64_t seed = 0;
};

TableRun run_table(const TableSpec& spec, long long episodes, std::uint64_t seed);
void write_csv(const TableRun& run, std::ostream& out);

struct FigureSeries {
    std::string name;
    std::vector<double> mean;
    std::vector<double> stderr_;
};

struct FigureRun {
    FigureSpec spec;
    std::vector<double> x;
    std::vector<double> optimal;   // steady-state-averaged analytic k(0,0,·)
    std::vector<double> bf_exact;  // fundamental-matrix evaluation of BF
    std::vector<FigureSeries> mc;  // optimal, bf, if, ct, bernoulli, simple-arq
    bool dominance_pass = false;   // optimal <= every MC mean + 4 stderr, pointwise
    bool monotone_pass = false;    // analytic curve non-increasing along the sweep
    long long episodes = 0;
    std::uint64_t seed = 0;
};

FigureRun run_figure(const FigureSpec& spec, long long episodes, std::uint64_t seed);
void write_csv(const FigureRun& run, std::ostream& out);

// Sweep-averaged optimal-vs-BF gap, the aggregate behind the correlation-sign
// comparison: negatively correlated sweeps must show the larger gap.
double mean_bf_gap(const FigureRun& run);

}  // namespace swipt

#endif
