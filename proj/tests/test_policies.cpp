#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swipt/policies.hpp"

using namespace swipt;

namespace {

SystemParams make_params(int ed, int e, double r0, double r1, double lambda) {
    SystemParams p;
    p.decode_cost = ed;
    p.harvest_units = e;
    p.rate_bad = r0;
    p.rate_good = r1;
    p.channel = ChannelSpec::iid(lambda);
    return p;
}

}  // namespace

TEST_CASE("battery-first switches at the decode threshold") {
    const SystemParams p = make_params(5, 1, 1, 10, 0.5);
    Rng rng(1);
    CHECK(decide(Policy::battery_first(), {4, 0, std::nullopt}, p, rng) == Decision::Harvest);
    CHECK(decide(Policy::battery_first(), {5, 0, std::nullopt}, p, rng) ==
          Decision::Accumulate);
}

TEST_CASE("information-first accumulates whenever it legally can") {
    const SystemParams p = make_params(5, 1, 1, 10, 0.5);
    Rng rng(1);
    CHECK(decide(Policy::information_first(), {1, 0, std::nullopt}, p, rng) ==
          Decision::Accumulate);
    CHECK(decide(Policy::information_first(), {0, 3, std::nullopt}, p, rng) ==
          Decision::Harvest);
    CHECK(decide(Policy::information_first(), {3, 10, std::nullopt}, p, rng) ==
          Decision::Harvest);
}

TEST_CASE("degenerate Bernoulli matches information-first") {
    const SystemParams p = make_params(5, 1, 1, 10, 0.5);
    const InfoGrid grid(p);
    for (int b = 0; b <= 8; ++b)
        for (int u = 0; u <= grid.n_units(); ++u)
            CHECK(harvest_probability(Policy::bernoulli(0.0), b, u, 1, grid, p) ==
                  harvest_probability(Policy::information_first(), b, u, 1, grid, p));
    CHECK_THROWS_AS(Policy::bernoulli(1.5), ConfigError);
}

TEST_CASE("the whole baseline family respects the structural rules") {
    const SystemParams p = make_params(4, 2, 2, 10, 0.5);
    const InfoGrid grid(p);
    const int n = grid.n_units();
    for (const Policy& pol : {Policy::battery_first(), Policy::information_first(),
                              Policy::coin_toss(), Policy::bernoulli(0.37)}) {
        for (int b = 0; b <= p.decode_cost + n + 2; ++b) {
            for (int u = 0; u <= n; ++u) {
                const double ph = harvest_probability(pol, b, u, 1, grid, p);
                if (b < 1 || u == n) {
                    CHECK(ph == 1.0);
                } else if (b >= p.decode_cost + 1) {
                    CHECK(ph == 0.0);
                } else {
                    CHECK(ph >= 0.0);
                    CHECK(ph <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("optimal policy follows its table and resolves ties to ID") {
    const SystemParams p = make_params(5, 1, 1, 10, 0.5);
    const DecisionTable t = solve_iid(p);
    const Policy pol = Policy::optimal(t);
    Rng rng(3);
    // interior states tie in this regime, so the policy accumulates
    CHECK(t.decision(3, 2) == Choice::Tie);
    CHECK(decide(pol, {3, 2, std::nullopt}, p, rng) == Decision::Accumulate);
    CHECK(decide(pol, {0, 2, std::nullopt}, p, rng) == Decision::Harvest);
    CHECK(decide(pol, {3, 10, std::nullopt}, p, rng) == Decision::Harvest);
}

TEST_CASE("coin toss randomizes only on the interior") {
    const SystemParams p = make_params(5, 1, 1, 10, 0.5);
    Rng rng(17);
    int harvests = 0;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i)
        harvests +=
            decide(Policy::coin_toss(), {3, 4, std::nullopt}, p, rng) == Decision::Harvest;
    CHECK(harvests > trials / 2 - 4 * 32);  // 4 sigma around a fair coin
    CHECK(harvests < trials / 2 + 4 * 32);
    CHECK(decide(Policy::coin_toss(), {6, 4, std::nullopt}, p, rng) == Decision::Accumulate);
}

TEST_CASE("simple ARQ waits for a full recharge, then attempts") {
    const SystemParams p = make_params(5, 1, 1, 10, 0.5);
    Rng rng(5);
    CHECK(decide(Policy::simple_arq(), {5, 0, std::nullopt}, p, rng) == Decision::Harvest);
    CHECK(decide(Policy::simple_arq(), {6, 0, std::nullopt}, p, rng) ==
          Decision::AttemptDecode);

    const ArqOutcome ok = simple_arq_attempt({6, 0, std::nullopt}, 1, p);
    CHECK(ok.success);
    const ArqOutcome drop = simple_arq_attempt({6, 0, std::nullopt}, 0, p);
    CHECK(!drop.success);
    CHECK(drop.state.battery == 5.0);
    CHECK(drop.state.info == 0.0);

    // overshoot from e > 1 is retained: the next slot re-attempts immediately
    const ArqOutcome over = simple_arq_attempt({7, 0, std::nullopt}, 0, p);
    CHECK(over.state.battery == 6.0);

    CHECK_THROWS_AS(simple_arq_attempt({5, 0, std::nullopt}, 0, p), InsufficientEnergy);
}
