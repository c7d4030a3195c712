#pragma once

#include <optional>
#include <string>
#include <vector>

#include "siglab/builtins.hpp"

namespace siglab {

/// ceil((24 * D * l / m)^m), the integer-friendly sign-pattern bound.
/// Requires l >= m >= 1 and D >= 1.
mpz_class sign_pattern_bound(long l, long m, long D);

/// (12 * D * k * n)^(d*n). Requires C(n,2)*k >= d*n.
mpz_class warren_bound(long n, long d, long k, long D);

/// m^(d*(n - d*m)). Requires 1 <= m < n/d.
mpz_class lower_bound_formula(long n, long m, long d);

/// Injective byte encoding: n, then fixed-width label indices over pairs in
/// lexicographic order.
std::string canonical_bytes(const EdgeLabeling& el);

struct CountReport {
    std::string family;
    int n = 0;
    long trials = 0;
    long distinct_count = 0;
    bool saturated = false;
    bool strong_only = false;
    double exponent = 0.0;  // log_n(distinct) / n, the finite-n speed exponent
    std::optional<mpz_class> warren;  // present when the bound precondition holds
    std::optional<mpz_class> lower;   // present when an m was supplied
};

struct SampleOptions {
    BoxSpec box;
    int bits = 20;
    bool strong_only = false;
    int workers = 1;
    std::optional<long> lower_m;
};

/// Monte Carlo distinct-labeling count with canonical dedup. Results are
/// independent of the worker count: trial t draws from the stream derived
/// from (seed, t), and per-worker dedup maps merge by minimum first-seen
/// trial index.
CountReport sample_count(const Family& fam, int n, long trials, uint64_t seed,
                         const SampleOptions& opts);

/// Exact representable-labeling count for order-type-determined 1-D families
/// (poset:1 and intervals), by enumerating ordered set partitions of the
/// scalar parameters. include_ties = false restricts to coincidence-free
/// configurations (strongly representable labelings).
mpz_class brute_force_count_1d(const BuiltinFamilyId& id, int n, bool include_ties);

}  // namespace siglab
