#include "swipt/solver_iid.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace swipt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Tie tolerance from the build contract: ties are genuine equalities of the
// two action values, detected relative to the value scale.
bool tie(double kid, double keh) { return std::abs(kid - keh) <= 1e-9 * std::max(1.0, kid); }

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

const char* to_string(Choice c) {
    switch (c) {
        case Choice::EH: return "EH";
        case Choice::ID: return "ID";
        case Choice::Tie: return "TIE";
        case Choice::None: return "";
    }
    return "";
}

DecisionTable::DecisionTable(const SystemParams& params, int b_max)
    : params_(params), grid_(params), b_max_(b_max) {
    const std::size_t n = static_cast<std::size_t>(b_max_ + 1) * (grid_.n_units() + 1);
    k_star_.assign(n, kNaN);
    k_id_.assign(n, kNaN);
    k_eh_.assign(n, kNaN);
    choice_.assign(n, Choice::None);
}

std::size_t DecisionTable::index(int b, int u) const {
    if (b < 0 || b > b_max_ || u < 0 || u > grid_.n_units())
        throw OutOfRange("DecisionTable: state (" + std::to_string(b) + "," +
                         std::to_string(u) + ") not materialized");
    return static_cast<std::size_t>(b) * (grid_.n_units() + 1) + u;
}

double DecisionTable::lookup_k(int b, int u) const {
    const int n = grid_.n_units();
    if (u == n) return b >= params_.decode_cost ? 0.0 : k(b, n);
    return k(std::min(b, params_.decode_cost + (n - u)), u);
}

void DecisionTable::set(int b, int u, double k, Choice c) {
    const std::size_t i = index(b, u);
    k_star_[i] = k;
    choice_[i] = c;
}

void DecisionTable::set_components(int b, int u, double kid, double keh) {
    const std::size_t i = index(b, u);
    k_id_[i] = kid;
    k_eh_[i] = keh;
}

double k_full_info(double battery, const SystemParams& params) {
    const double lam = params.channel.lambda();
    if (battery >= params.decode_cost) return 0.0;
    if (lam <= 0.0) throw InfeasibleChannel("GOOD state unreachable: lambda = 0");
    const double goods_needed =
        std::ceil((params.decode_cost - battery) / params.harvest_units);
    return goods_needed / lam;
}

double k_surplus(int j, double lambda) {
    if (j < 1) throw OutOfRange("k_surplus: j must be >= 1");
    double sum = 0.0;
    double term = 1.0;
    for (int i = 1; i <= j; ++i) {
        sum += term;
        term *= 1.0 - lambda;
    }
    return sum;
}

DecisionTable solve_iid(const SystemParams& params) {
    params.validate();
    const double lam = params.channel.lambda();
    if (lam <= 0.0) throw InfeasibleChannel("solve_iid: lambda = 0");

    const int Ed = params.decode_cost;
    const int e = params.harvest_units;
    InfoGrid grid(params);
    const int n = grid.n_units();
    const int b_max = Ed + n;

    DecisionTable table(params, b_max);
    std::vector<char> done(static_cast<std::size_t>(b_max + 1) * (n + 1), 0);
    auto mark = [&](int b, int u) { done[table.index(b, u)] = 1; };
    // Every continuation read must hit an entry finalized by an earlier step.
    auto lk = [&](int b, int u) {
        if (u == n && b >= Ed) return 0.0;
        const int bc = u == n ? b : std::min(b, Ed + (n - u));
        if (!done[table.index(bc, u)])
            throw std::logic_error("solve_iid: recursion read an unfinalized entry");
        return table.k(bc, u);
    };

    // full-information column: absorbing above the decode threshold,
    // harvest-only closed form below it
    for (int b = 0; b <= b_max; ++b) {
        if (b >= Ed) {
            table.set(b, n, 0.0, Choice::None);
        } else {
            table.set(b, n, k_full_info(b, params), Choice::EH);
        }
        mark(b, n);
    }
    // energy-surplus boundary of each info level
    for (int j = 1; j <= n; ++j) {
        table.set(Ed + j, n - j, k_surplus(j, lam), Choice::ID);
        mark(Ed + j, n - j);
    }

    // interior: info levels descending, battery descending, so both
    // continuations of each state are already final
    for (int u = n - 1; u >= 0; --u) {
        const int j = n - u;
        for (int b = Ed + j - 1; b >= 0; --b) {
            const double keh = 1.0 / lam + lk(b + e, u);
            if (b >= 1) {
                const double kid =
                    1.0 + lam * lk(b - 1, n) + (1.0 - lam) * lk(b - 1, std::min(u + 1, n));
                if (tie(kid, keh)) {
                    table.set(b, u, kid, Choice::Tie);
                } else if (kid < keh) {
                    table.set(b, u, kid, Choice::ID);
                } else {
                    table.set(b, u, keh, Choice::EH);
                }
            } else {
                table.set(b, u, keh, Choice::EH);
            }
            mark(b, u);
        }
        // constant in battery past the boundary column
        for (int b = Ed + j + 1; b <= b_max; ++b) {
            table.set(b, u, table.k(Ed + j, u), Choice::ID);
            mark(b, u);
        }
    }

    // per-state action values for reporting and cross-checks
    for (int b = 0; b <= b_max; ++b) {
        for (int u = 0; u <= n; ++u) {
            if (table.absorbing(b, u)) continue;
            const double keh = 1.0 / lam + table.lookup_k(b + e, u);
            double kid = kNaN;
            if (b >= 1 && u < n)
                kid = 1.0 + lam * table.lookup_k(b - 1, n) +
                      (1.0 - lam) * table.lookup_k(b - 1, std::min(u + 1, n));
            table.set_components(b, u, kid, keh);
        }
    }
    return table;
}

KComponents k_components(int b, int u, const DecisionTable& table) {
    if (b < 1 || u >= table.n_units())
        throw OutOfRange("k_components requires battery >= 1 and incomplete info");
    const SystemParams& p = table.params();
    const double lam = p.channel.lambda();
    KComponents c;
    c.k_id = 1.0 + lam * table.lookup_k(b - 1, table.n_units()) +
             (1.0 - lam) * table.lookup_k(b - 1, std::min(u + 1, table.n_units()));
    c.k_eh = 1.0 / lam + table.lookup_k(b + p.harvest_units, u);
    return c;
}

void write_csv(const DecisionTable& table, std::ostream& out) {
    out << "b,m_bits,k_star,k_id,k_eh,rho_star\n";
    for (int b = 0; b <= table.b_max(); ++b) {
        for (int u = 0; u <= table.n_units(); ++u) {
            out << b << ',' << fmt(table.grid().level(u)) << ',' << fmt(table.k(b, u)) << ','
                << fmt(table.k_id(b, u)) << ',' << fmt(table.k_eh(b, u)) << ','
                << to_string(table.decision(b, u)) << '\n';
        }
    }
}

}  // namespace swipt
