#ifndef SWIPT_ERRORS_HPP
#define SWIPT_ERRORS_HPP

#include <stdexcept>

namespace swipt {

// Invalid or inconsistent SystemParams / CLI configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An action needing the transceiver was taken with battery < 1.
struct InsufficientEnergy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The GOOD state is unreachable (lambda = 0, or lambda0 = 0 for the
// correlated chain), so absorption times are infinite.
struct InfeasibleChannel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two-state channel chain is periodic or reducible; no unique steady state.
struct DegenerateChain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A state lookup outside the materialized table range.
struct OutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A Monte Carlo episode hit the slot cap before absorbing.
struct EpisodeCap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The policy-induced chain cannot reach absorption from some state.
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace swipt

#endif
