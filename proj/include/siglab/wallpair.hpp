#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siglab/family.hpp"

namespace siglab {

/// Certificate that (a, b) is a general wall pair: exactly one predicate
/// vanishes, its b-gradient is nonzero, and substituting +/- at the wall
/// index flips the label.
struct WallPairCert {
    int wall_index = -1;
    std::vector<Sign> signs;  // ZERO exactly at wall_index
    VecR grad_b;
    std::pair<int, int> flip;  // labels for + and - at the wall index
};

struct WallPairSeed {
    VecR a, b;
    WallPairCert cert;
};

struct SpanningSeed {
    VecR a_star;
    std::vector<WallPairSeed> pairs;  // d pairs sharing a_star
    MatR grad_matrix;                  // rows grad_a P_{s_i}(a*, b_i)
    Rat det;                           // exact, nonzero
};

/// Exact test; absence covers every failure mode (outside U, wrong number of
/// zeros, special pair, no label flip).
std::optional<WallPairCert> is_general_wall_pair(const Family& fam, const VecR& a, const VecR& b);

struct WallSearchOptions {
    BoxSpec box;
    int bits = 16;
    long budget = 4000;
    int want_index = -1;    // restrict to one wall index; -1 = any
    int probe_salt = 0;     // varies the deterministic probe schedule
    bool use_probes = true; // false: exercise only the random bracketing path
};

struct WallPairResult {
    std::optional<WallPairSeed> seed;
    std::string diagnostic;
};

/// Floating-point search with exact rational snapping; every returned seed
/// has been re-certified by is_general_wall_pair.
WallPairResult find_wall_pair(const Family& fam, Rng& rng, const WallSearchOptions& opts,
                              const VecR* fixed_a = nullptr);

struct SpanningResult {
    std::optional<SpanningSeed> seed;
    std::string diagnostic;
};

/// Greedy rank building over wall pairs sharing one base point; the gradient
/// matrix determinant is certified exactly.
SpanningResult find_spanning_seed(const Family& fam, Rng& rng, const WallSearchOptions& opts);

/// Re-runs the exact certificates of a seed (used before trusting persisted
/// seed records).
void recertify(const Family& fam, const SpanningSeed& seed);

}  // namespace siglab
