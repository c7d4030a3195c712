#pragma once

#include <optional>
#include <string>
#include <vector>

#include "siglab/family.hpp"

namespace siglab {

/// Identifiers for the built-in geometric families with explicit
/// polynomial encodings.
struct BuiltinFamilyId {
    enum class Kind {
        Disks,            // open disks in the plane, d = 3
        UnitDisks,        // open unit disks, d = 2
        Balls,            // open balls in R^m, d = m+1
        UnitBalls,        // open unit balls in R^m, d = m
        Intervals,        // closed intervals, d = 2
        Segments,         // non-vertical closed segments, d = 4
        Boxes,            // closed axis-parallel boxes in R^m, d = 2m
        CircleLinks,      // circles in R^3, linking relation, d = 6
        UnitCircleLinks,  // unit circles in R^3, d = 5
        BallOrders,       // containment order of closed balls in R^m, d = m+1
        CircleOrders,     // containment order of closed disks, d = 3
        PosetDim,         // coordinatewise order on R^d
    };
    Kind kind;
    int param = 0;  // m for Balls/UnitBalls/Boxes/BallOrders, d for PosetDim

    /// Parses names like "disks", "balls:3", "poset:2".
    static BuiltinFamilyId parse(const std::string& name);
    std::string name() const;
};

Family builtin(const BuiltinFamilyId& id);
Family builtin(const std::string& name);
std::vector<std::string> builtin_names();

/// Circle in R^3 whose plane is not parallel to the z-axis: center (a,b,c),
/// plane normal (d,e,1), radius r > 0.
struct CircleSpec {
    Rat a, b, c, d, e, r;
    VecR as_vec() const { return vec_from({a, b, c, d, e, r}); }
};

/// The derived linking polynomials in the 12 variables
/// (a,b,c,d,e,r, a',b',c',d',e',r'), built by symbolic composition.
struct LinkingKernel {
    Polynomial q;           // squared norm of the plane-intersection direction
    Polynomial u;           // numerator of the foot-point parameter t
    Polynomial tau1, tau2, tau3;
    Polynomial p1, p2, p3;  // q * foot point L
    Polynomial p4;          // q^2 * (r^2 - dist(L, center)^2)
    Polynomial g;           // p4 / q
    Polynomial big_g;       // G: the mixed-term factor of the final inequality
    Polynomial big_k;       // K: H / q
    Polynomial pred4;       // final inequality difference, 4*p4*q*G^2 - H^2
    Polynomial d_diff, e_diff;

    static const LinkingKernel& instance();
};

struct LinkTrace {
    std::vector<Sign> signs;  // of (d-d', e-e', p4, pred4)
    bool link = false;
    bool degenerate = false;  // a zero among the four polynomials; caller decides
};

/// Exact Appendix-style linking decision for two circles.
LinkTrace linking_predicate(const CircleSpec& c1, const CircleSpec& c2);

/// Gauss linking integral via fixed product trapezoidal quadrature.
double gauss_linking_integral(const CircleSpec& c1, const CircleSpec& c2, int nodes = 512);

/// Float linking oracle: nullopt when the integral is within 0.2 of a
/// half-integer (inconclusive); otherwise the rounded linking verdict.
std::optional<bool> gauss_linking_oracle(const CircleSpec& c1, const CircleSpec& c2,
                                         int nodes = 512);

/// Relation computed by direct geometry, not via the P-polynomials.
/// Returns a label name of the family, or nullopt when the float linking
/// oracle is inconclusive.
std::optional<std::string> oracle_relation(const BuiltinFamilyId& id, const VecR& a, const VecR& b);

/// Dyadic-rational point sampled from box, rejection-resampled into U.
VecR random_point(const Family& fam, Rng& rng, const BoxSpec& box, int bits, int max_retries = 256);

}  // namespace siglab
