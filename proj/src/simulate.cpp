#include "swipt/simulate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace swipt {

namespace {

struct WalkState {
    long long battery = 0;
    int u = 0;
    int g = 1;
};

// Integer-state episode walk. All HARQ policies here are no-split, so the
// state stays on (integer battery) x (info grid index). Returns -1 when the
// slot cap is hit.
long long walk_harq(const Policy& policy, const SystemParams& p, const InfoGrid& grid,
                    Rng& rng, WalkState st, long long cap) {
    const int n = grid.n_units();
    const bool corr = p.channel.kind == ChannelKind::Correlated;
    const int Ed = p.decode_cost;
    const int e = p.harvest_units;
    const double lam_iid = corr ? 0.0 : p.channel.lambda();

    for (long long t = 1; t <= cap; ++t) {
        const int b_int = static_cast<int>(std::min<long long>(st.battery, 1 << 30));
        const double ph = harvest_probability(policy, b_int, st.u, st.g, grid, p);
        bool harvest;
        if (ph >= 1.0) {
            harvest = true;
        } else if (ph <= 0.0) {
            harvest = false;
        } else {
            harvest = rng.next_unit() < ph;
        }
        const double lam = corr ? p.channel.lambda_given(st.g) : lam_iid;
        const bool good = rng.next_unit() < lam;
        if (harvest) {
            if (good) st.battery += e;
        } else {
            st.battery -= 1;
            st.u = good ? n : std::min(st.u + 1, n);
        }
        if (corr) st.g = good ? 1 : 0;
        if (st.u == n && st.battery >= Ed) return t;
    }
    return -1;
}

long long walk_arq(const SystemParams& p, Rng& rng, WalkState st, long long cap) {
    const bool corr = p.channel.kind == ChannelKind::Correlated;
    const int Ed = p.decode_cost;
    const int e = p.harvest_units;
    const double lam_iid = corr ? 0.0 : p.channel.lambda();

    for (long long t = 1; t <= cap; ++t) {
        const double lam = corr ? p.channel.lambda_given(st.g) : lam_iid;
        const bool good = rng.next_unit() < lam;
        if (st.battery >= Ed + 1) {
            st.battery -= 1;  // sampling cost; a failed attempt keeps the surplus
            if (good) return t;
        } else if (good) {
            st.battery += e;
        }
        if (corr) st.g = good ? 1 : 0;
    }
    return -1;
}

long long walk(const Policy& policy, const SystemParams& p, const InfoGrid& grid, Rng& rng,
               WalkState st, long long cap) {
    if (policy.kind == PolicyKind::SimpleArq) return walk_arq(p, rng, st, cap);
    return walk_harq(policy, p, grid, rng, st, cap);
}

WalkState make_initial(const ReceiverState& initial, const SystemParams& params,
                       const InfoGrid& grid, std::optional<int> fixed_good, double phi1,
                       Rng& rng) {
    WalkState st;
    st.battery = static_cast<long long>(std::floor(initial.battery + 1e-9));
    st.u = grid.floor_index(initial.info);
    if (params.channel.kind == ChannelKind::Correlated) {
        if (initial.prev_good) {
            st.g = *initial.prev_good;
        } else if (fixed_good) {
            st.g = *fixed_good;
        } else {
            st.g = rng.next_unit() < phi1 ? 1 : 0;
        }
    }
    return st;
}

struct ChunkTotals {
    double sum = 0.0;
    double sumsq = 0.0;
    long long censored = 0;
    long long max_slots = 0;
};

// Fixed-size chunks with an ordered final combine keep the aggregation
// independent of how chunks are scheduled over threads.
constexpr long long kChunk = 4096;

EstimateReport finalize(const std::vector<ChunkTotals>& chunks, long long requested,
                        std::uint64_t seed) {
    double sum = 0.0, sumsq = 0.0;
    long long censored = 0, max_slots = 0;
    for (const ChunkTotals& c : chunks) {
        sum += c.sum;
        sumsq += c.sumsq;
        censored += c.censored;
        max_slots = std::max(max_slots, c.max_slots);
    }
    EstimateReport r;
    r.requested = requested;
    r.censored = censored;
    r.episodes = requested - censored;
    r.master_seed = seed;
    r.max_slots = max_slots;
    if (r.episodes > 0) {
        const double n = static_cast<double>(r.episodes);
        r.mean = sum / n;
        if (r.episodes > 1) {
            const double var = std::max(0.0, (sumsq - n * r.mean * r.mean) / (n - 1.0));
            r.stderr_ = std::sqrt(var / n);
        }
        r.ci_lo = r.mean - 1.96 * r.stderr_;
        r.ci_hi = r.mean + 1.96 * r.stderr_;
    } else {
        r.mean = r.stderr_ = r.ci_lo = r.ci_hi = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

ChunkTotals run_chunk(const Policy& policy, const SystemParams& params, const InfoGrid& grid,
                      long long begin, long long end, std::uint64_t seed,
                      const SimOptions& opts, double phi1) {
    ChunkTotals t;
    for (long long i = begin; i < end; ++i) {
        Rng rng(derive_stream(seed, static_cast<std::uint64_t>(i)));
        const WalkState st =
            make_initial(opts.initial, params, grid, opts.initial_good, phi1, rng);
        const long long slots = walk(policy, params, grid, rng, st, opts.slot_cap);
        if (slots < 0) {
            ++t.censored;
        } else {
            const double x = static_cast<double>(slots);
            t.sum += x;
            t.sumsq += x * x;
            t.max_slots = std::max(t.max_slots, slots);
        }
    }
    return t;
}

double steady_phi1(const SystemParams& params) {
    if (params.channel.kind != ChannelKind::Correlated) return 1.0;
    return steady_state(params.channel.lambda0, params.channel.lambda1).phi1;
}

void check_estimate_args(const Policy& policy, const SystemParams& params, long long episodes,
                         const SimOptions& opts) {
    params.validate();
    if (episodes < 2) throw ConfigError("estimate needs at least 2 episodes");
    if (policy.kind != PolicyKind::SimpleArq && is_absorbing(opts.initial, params))
        throw ConfigError("initial state is already absorbing");
}

}  // namespace

long long run_episode(const Policy& policy, const SystemParams& params, Rng& rng,
                      const ReceiverState& initial, long long slot_cap,
                      std::optional<int> initial_good) {
    params.validate();
    if (policy.kind != PolicyKind::SimpleArq && is_absorbing(initial, params))
        throw ConfigError("initial state is already absorbing");
    const InfoGrid grid(params);
    const WalkState st =
        make_initial(initial, params, grid, initial_good, steady_phi1(params), rng);
    const long long slots = walk(policy, params, grid, rng, st, slot_cap);
    if (slots < 0)
        throw EpisodeCap("episode exceeded " + std::to_string(slot_cap) + " slots");
    return slots;
}

EstimateReport estimate(const Policy& policy, const SystemParams& params, long long episodes,
                        std::uint64_t master_seed, const SimOptions& opts) {
    check_estimate_args(policy, params, episodes, opts);
    const InfoGrid grid(params);
    const double phi1 = steady_phi1(params);
    const long long n_chunks = (episodes + kChunk - 1) / kChunk;
    std::vector<ChunkTotals> chunks(static_cast<std::size_t>(n_chunks));

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (long long c = 0; c < n_chunks; ++c) {
        const long long begin = c * kChunk;
        const long long end = std::min(episodes, begin + kChunk);
        chunks[static_cast<std::size_t>(c)] =
            run_chunk(policy, params, grid, begin, end, master_seed, opts, phi1);
    }
    return finalize(chunks, episodes, master_seed);
}

EstimateReport estimate_serial(const Policy& policy, const SystemParams& params,
                               long long episodes, std::uint64_t master_seed, SimOptions opts) {
    check_estimate_args(policy, params, episodes, opts);
    const InfoGrid grid(params);
    const double phi1 = steady_phi1(params);
    const long long n_chunks = (episodes + kChunk - 1) / kChunk;
    std::vector<ChunkTotals> chunks(static_cast<std::size_t>(n_chunks));
    for (long long c = 0; c < n_chunks; ++c) {
        chunks[static_cast<std::size_t>(c)] = run_chunk(
            policy, params, grid, c * kChunk, std::min(episodes, (c + 1) * kChunk),
            master_seed, opts, phi1);
    }
    return finalize(chunks, episodes, master_seed);
}

void write_csv_header(std::ostream& out) {
    out << "policy,Ed,e,R0,R1,lambda0,lambda1,mean,stderr,ci_lo,ci_hi,episodes,censored,seed\n";
}

void write_csv_row(const Policy& policy, const SystemParams& params, const EstimateReport& r,
                   std::ostream& out) {
    out.precision(12);
    out << policy.name() << ',' << params.decode_cost << ',' << params.harvest_units << ','
        << params.rate_bad << ',' << params.rate_good << ',' << params.channel.lambda0 << ','
        << params.channel.lambda1 << ',' << r.mean << ',' << r.stderr_ << ',' << r.ci_lo << ','
        << r.ci_hi << ',' << r.episodes << ',' << r.censored << ',' << r.master_seed << '\n';
}

OracleResult::OracleResult(const SystemParams& params, int b_cap)
    : params_(params), grid_(params), b_cap_(b_cap) {
    const std::size_t n = static_cast<std::size_t>(b_cap_ + 1) * (grid_.n_units() + 1) *
                          (correlated() ? 2 : 1);
    k_.assign(n, 0.0);
}

std::size_t OracleResult::index(int b, int u, int g) const {
    if (b < 0 || b > b_cap_ || u < 0 || u > grid_.n_units())
        throw OutOfRange("OracleResult: state out of range");
    const std::size_t flat = static_cast<std::size_t>(b) * (grid_.n_units() + 1) + u;
    return correlated() ? flat * 2 + g : flat;
}

double OracleResult::at(int b, int u, int g) const { return k_[index(b, u, g)]; }

double OracleResult::from_empty() const {
    if (!correlated()) return at(0, 0, 0);
    const SteadyState s = steady_state(params_.channel.lambda0, params_.channel.lambda1);
    return s.phi0 * at(0, 0, 0) + s.phi1 * at(0, 0, 1);
}

OracleResult oracle_k(const SystemParams& params, const Policy& policy) {
    params.validate();
    if (policy.kind == PolicyKind::SimpleArq)
        throw ConfigError("oracle_k covers the harvest/accumulate policies only");

    const InfoGrid grid(params);
    const int n = grid.n_units();
    const int Ed = params.decode_cost;
    const int e = params.harvest_units;
    const bool corr = params.channel.kind == ChannelKind::Correlated;
    // Harvesting is only ever chosen below the top of the solver tables, so
    // this cap closes the chain.
    const int b_cap = Ed + n + e;

    OracleResult res(params, b_cap);
    const int gs = corr ? 2 : 1;
    const Eigen::Index N = static_cast<Eigen::Index>((b_cap + 1) * (n + 1) * gs);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(N, N);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(N);

    for (int b = 0; b <= b_cap; ++b) {
        for (int u = 0; u <= n; ++u) {
            for (int g = 0; g < gs; ++g) {
                const Eigen::Index row = static_cast<Eigen::Index>(res.index(b, u, g));
                if (u == n && b >= Ed) {
                    rhs[row] = 0.0;  // absorbing
                    continue;
                }
                const double ph = harvest_probability(policy, b, u, corr ? g : 1, grid, params);
                const double lam =
                    corr ? params.channel.lambda_given(g) : params.channel.lambda();
                if (ph > 0.0 && b + e > b_cap)
                    throw std::logic_error("oracle_k: harvest above the closed battery range");
                auto sub = [&](int nb, int nu, int ng, double p) {
                    if (p > 0.0) A(row, static_cast<Eigen::Index>(res.index(nb, nu, ng))) -= p;
                };
                sub(b + e, u, corr ? 1 : 0, ph * lam);
                sub(b, u, 0, ph * (1.0 - lam));
                sub(b - 1, n, corr ? 1 : 0, (1.0 - ph) * lam);
                sub(b - 1, std::min(u + 1, n), 0, (1.0 - ph) * (1.0 - lam));
            }
        }
    }

    Eigen::VectorXd k = A.partialPivLu().solve(rhs);
    if (!k.allFinite() || (A * k - rhs).cwiseAbs().maxCoeff() >
                              1e-8 * std::max(1.0, k.cwiseAbs().maxCoeff()))
        throw SingularSystem("policy-induced chain is not absorbing from every state");
    std::copy(k.data(), k.data() + N, res.values().begin());
    return res;
}

}  // namespace swipt
