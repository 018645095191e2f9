#include "swipt/solver_corr.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "swipt/channel.hpp"

namespace swipt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool tie(double kid, double keh) { return std::abs(kid - keh) <= 1e-9 * std::max(1.0, kid); }

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double geometric_partial(double lambda0, int terms) {
    double sum = 0.0, term = 1.0;
    for (int i = 1; i <= terms; ++i) {
        sum += term;
        term *= 1.0 - lambda0;
    }
    return sum;
}

}  // namespace

DecisionTable3D::DecisionTable3D(const SystemParams& params, int b_max)
    : params_(params), grid_(params), b_max_(b_max) {
    const std::size_t n = static_cast<std::size_t>(b_max_ + 1) * (grid_.n_units() + 1) * 2;
    k_star_.assign(n, kNaN);
    k_id_.assign(n, kNaN);
    k_eh_.assign(n, kNaN);
    choice_.assign(n, Choice::None);
}

std::size_t DecisionTable3D::index(int b, int u, int g) const {
    if (b < 0 || b > b_max_ || u < 0 || u > grid_.n_units() || g < 0 || g > 1)
        throw OutOfRange("DecisionTable3D: state (" + std::to_string(b) + "," +
                         std::to_string(u) + "," + std::to_string(g) + ") not materialized");
    return (static_cast<std::size_t>(b) * (grid_.n_units() + 1) + u) * 2 + g;
}

double DecisionTable3D::lookup_k(int b, int u, int g) const {
    const int n = grid_.n_units();
    if (u == n) return b >= params_.decode_cost ? 0.0 : k(b, n, g);
    return k(std::min(b, params_.decode_cost + (n - u)), u, g);
}

void DecisionTable3D::set(int b, int u, int g, double k, Choice c) {
    const std::size_t i = index(b, u, g);
    k_star_[i] = k;
    choice_[i] = c;
}

void DecisionTable3D::set_components(int b, int u, int g, double kid, double keh) {
    const std::size_t i = index(b, u, g);
    k_id_[i] = kid;
    k_eh_[i] = keh;
}

double k_full_info_corr(double battery, int prev_good, const SystemParams& params) {
    const double l0 = params.channel.lambda0;
    const double l1 = params.channel.lambda1;
    if (battery >= params.decode_cost) return 0.0;
    if (l0 <= 0.0) throw InfeasibleChannel("GOOD state unreachable from BAD: lambda0 = 0");
    const double goods_needed =
        std::ceil((params.decode_cost - battery) / params.harvest_units);
    const double cycle = (1.0 + l0 - l1) / l0;  // mean slots per GOOD arrival, from GOOD
    if (prev_good) return goods_needed * cycle;
    return 1.0 / l0 + (goods_needed - 1.0) * cycle;
}

double k_surplus_corr(int j, int prev_good, const SystemParams& params) {
    if (j < 1) throw OutOfRange("k_surplus_corr: j must be >= 1");
    const double l0 = params.channel.lambda0;
    const double l1 = params.channel.lambda1;
    if (!prev_good) return geometric_partial(l0, j);
    if (j == 1) return 1.0;
    return 1.0 + (1.0 - l1) * geometric_partial(l0, j - 1);
}

DecisionTable3D solve_corr(const SystemParams& params) {
    params.validate();
    const double l0 = params.channel.lambda0;
    const double l1 = params.channel.lambda1;
    if (l0 <= 0.0) throw InfeasibleChannel("solve_corr: lambda0 = 0");

    const int Ed = params.decode_cost;
    const int e = params.harvest_units;
    InfoGrid grid(params);
    const int n = grid.n_units();
    const int b_max = Ed + n;

    DecisionTable3D table(params, b_max);
    std::vector<char> done(static_cast<std::size_t>(b_max + 1) * (n + 1) * 2, 0);
    auto mark = [&](int b, int u, int g) { done[table.index(b, u, g)] = 1; };
    auto lk = [&](int b, int u, int g) {
        if (u == n && b >= Ed) return 0.0;
        const int bc = u == n ? b : std::min(b, Ed + (n - u));
        if (!done[table.index(bc, u, g)])
            throw std::logic_error("solve_corr: recursion read an unfinalized entry");
        return table.k(bc, u, g);
    };

    for (int b = 0; b <= b_max; ++b) {
        for (int g = 0; g <= 1; ++g) {
            if (b >= Ed) {
                table.set(b, n, g, 0.0, Choice::None);
            } else {
                table.set(b, n, g, k_full_info_corr(b, g, params), Choice::EH);
            }
            mark(b, n, g);
        }
    }
    for (int j = 1; j <= n; ++j) {
        for (int g = 0; g <= 1; ++g) {
            table.set(Ed + j, n - j, g, k_surplus_corr(j, g, params), Choice::ID);
            mark(Ed + j, n - j, g);
        }
    }

    for (int u = n - 1; u >= 0; --u) {
        const int j = n - u;
        for (int b = Ed + j - 1; b >= 0; --b) {
            // The G=0 slice must be final before the G=1 slice: harvesting in
            // a GOOD-history state that turns BAD lands at (b, u, 0).
            const double keh0 = 1.0 / l0 + lk(b + e, u, 1);
            if (b >= 1) {
                const double kid0 = 1.0 + l0 * lk(b - 1, n, 1) +
                                    (1.0 - l0) * lk(b - 1, std::min(u + 1, n), 0);
                if (tie(kid0, keh0)) {
                    table.set(b, u, 0, kid0, Choice::Tie);
                } else if (kid0 < keh0) {
                    table.set(b, u, 0, kid0, Choice::ID);
                } else {
                    table.set(b, u, 0, keh0, Choice::EH);
                }
            } else {
                table.set(b, u, 0, keh0, Choice::EH);
            }
            mark(b, u, 0);

            const double keh1 = 1.0 + l1 * lk(b + e, u, 1) + (1.0 - l1) * table.k(b, u, 0);
            if (b >= 1) {
                const double kid1 = 1.0 + l1 * lk(b - 1, n, 1) +
                                    (1.0 - l1) * lk(b - 1, std::min(u + 1, n), 0);
                if (tie(kid1, keh1)) {
                    table.set(b, u, 1, kid1, Choice::Tie);
                } else if (kid1 < keh1) {
                    table.set(b, u, 1, kid1, Choice::ID);
                } else {
                    table.set(b, u, 1, keh1, Choice::EH);
                }
            } else {
                table.set(b, u, 1, keh1, Choice::EH);
            }
            mark(b, u, 1);
        }
        for (int b = Ed + j + 1; b <= b_max; ++b) {
            for (int g = 0; g <= 1; ++g) {
                table.set(b, u, g, table.k(Ed + j, u, g), Choice::ID);
                mark(b, u, g);
            }
        }
    }

    for (int b = 0; b <= b_max; ++b) {
        for (int u = 0; u <= n; ++u) {
            if (table.absorbing(b, u)) continue;
            for (int g = 0; g <= 1; ++g) {
                const double keh =
                    g ? 1.0 + l1 * table.lookup_k(b + e, u, 1) + (1.0 - l1) * table.k(b, u, 0)
                      : 1.0 / l0 + table.lookup_k(b + e, u, 1);
                double kid = kNaN;
                if (b >= 1 && u < n) {
                    const double lg = g ? l1 : l0;
                    kid = 1.0 + lg * table.lookup_k(b - 1, n, 1) +
                          (1.0 - lg) * table.lookup_k(b - 1, std::min(u + 1, n), 0);
                }
                table.set_components(b, u, g, kid, keh);
            }
        }
    }
    return table;
}

KComponents k_components_corr(int b, int u, int g, const DecisionTable3D& table) {
    if (b < 1 || u >= table.n_units())
        throw OutOfRange("k_components_corr requires battery >= 1 and incomplete info");
    KComponents c;
    c.k_id = table.k_id(b, u, g);
    c.k_eh = table.k_eh(b, u, g);
    return c;
}

double steady_average_k(const DecisionTable3D& table, int b, int u) {
    const SteadyState s =
        steady_state(table.params().channel.lambda0, table.params().channel.lambda1);
    return s.phi0 * table.k(b, u, 0) + s.phi1 * table.k(b, u, 1);
}

void write_csv(const DecisionTable3D& table, std::ostream& out) {
    out << "b,m_bits,G,k_star,k_id,k_eh,rho_star\n";
    for (int b = 0; b <= table.b_max(); ++b) {
        for (int u = 0; u <= table.n_units(); ++u) {
            for (int g = 0; g <= 1; ++g) {
                out << b << ',' << fmt(table.grid().level(u)) << ',' << g << ','
                    << fmt(table.k(b, u, g)) << ',' << fmt(table.k_id(b, u, g)) << ','
                    << fmt(table.k_eh(b, u, g)) << ',' << to_string(table.decision(b, u, g))
                    << '\n';
            }
        }
    }
}

}  // namespace swipt
