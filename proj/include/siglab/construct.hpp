#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "siglab/wallpair.hpp"

namespace siglab {

/// The perturbation-lemma parameters: z rows biorthogonal to the a-gradients,
/// v directions normalizing the b-gradients, a heuristic margin delta, the
/// exact Taylor constant bound C over the delta-box, and the chosen eps.
struct GridParameters {
    std::vector<VecR> z;  // z_i . grad_a P_{s_j}(a*, b_j) = delta_ij, exact
    std::vector<VecR> v;  // v_i . grad_b P_{s_i}(a*, b_i) = 1, exact
    Rat delta;
    Rat taylor_c;
    Rat eps;
};

struct Grid {
    SpanningSeed seed;
    int m = 0;
    GridParameters params;
    std::vector<std::vector<VecR>> b_pert;       // [i][j-1] = b_i + (1/2 - j) eps v_i
    std::vector<std::vector<Sign>> base_signs;   // signs of P_s(a*, b_i), ZERO at s_i
};

GridParameters grid_parameters(const Family& fam, const SpanningSeed& seed, int m,
                               const Rat& delta = Rat(1, 2));

/// Assembles the grid for a given eps (no tuple verification yet).
Grid build_grid(const Family& fam, const SpanningSeed& seed, int m, GridParameters params);

struct TupleFailure {
    std::vector<int> tuple;
    int i, j, s;
    std::string condition;
};

struct VerifyReport {
    long checked = 0;
    bool exhaustive = false;
    std::vector<TupleFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// The point a = a* + eps * sum j_i z_i, verified exactly against the four
/// perturbation-lemma conditions for every (i, j). Throws GridInvalid with
/// the failing (i, j, s) otherwise. Tuple entries are 1-based.
VecR tuple_point(const Family& fam, const Grid& grid, const std::vector<int>& tuple);

/// Exhaustive mode checks all m^d tuples when m^d <= cap; otherwise samples.
VerifyReport verify_grid(const Family& fam, const Grid& grid, long exhaustive_cap = 100000,
                         long sample_count = 1000, Rng* rng = nullptr);

/// Builds parameters, then halves eps until exhaustive verification passes.
Grid build_grid_verified(const Family& fam, const SpanningSeed& seed, int m,
                         long exhaustive_cap = 100000, int max_halvings = 64);

/// Recovers the tuple from labels against the grid rows (1-based entries).
std::vector<int> tuple_recovery(const Family& fam, const VecR& a, const Grid& grid);

/// One emitted labeling with its strongly-nonzero witness configuration.
using LabelingSink = std::function<void(const EdgeLabeling&, const Configuration&)>;

struct FactoryStats {
    long emitted = 0;
    long perturbation_retries = 0;
};

/// Emits exactly m^(d*(n-dm)) strongly representable labelings, one per
/// choice of tuples for the first n-dm vertices, in lexicographic tuple
/// order. Every witness passes strong_check before emission.
FactoryStats generate_labelings(const Family& fam, const SpanningSeed& seed, int n, int m,
                                Rng& rng, const LabelingSink& sink,
                                long exhaustive_cap = 100000);

}  // namespace siglab
