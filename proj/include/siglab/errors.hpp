#pragma once

#include <stdexcept>
#include <string>

namespace siglab {

/// Bad configuration or violated operation precondition (caller's fault).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A sampling/search budget ran out. Never a disproof of existence.
struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal exact-verification step failed. Always aborts loudly;
/// partial results are never emitted past one of these.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A grid tuple failed one of the four perturbation-lemma conditions.
/// Carries the failing (i, j, s) so the caller can shrink eps and rebuild.
struct GridInvalid : std::runtime_error {
    int i, j, s;
    std::string condition;
    GridInvalid(int i_, int j_, int s_, std::string cond)
        : std::runtime_error("grid tuple check failed: condition " + cond +
                             " at (i=" + std::to_string(i_) + ", j=" + std::to_string(j_) +
                             ", s=" + std::to_string(s_) + ")"),
          i(i_), j(j_), s(s_), condition(std::move(cond)) {}
};

/// Tuple recovery hit a vanishing predicate value.
struct Undecodable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace siglab
