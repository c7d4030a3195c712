#pragma once

#include <cstdint>

#include "siglab/types.hpp"

namespace siglab {

/// Deterministic RNG (splitmix64 core) with hand-rolled distributions so
/// that results are reproducible across platforms and independent of how
/// trials are partitioned over workers.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(mix(seed ^ 0x7c0de5d9f23ull)) {}

    /// Stream for one trial, decorrelated from (seed, trial) jointly.
    static Rng for_trial(uint64_t seed, uint64_t trial) {
        Rng r(0);
        r.state_ = mix(mix(seed) ^ (trial + 0x632be59bd9b4e019ull));
        return r;
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n), unbiased.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = next();
        } while (x >= lim);
        return x % n;
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1u; }

    /// Dyadic rational lo + (hi-lo)*k/2^bits with k uniform in [0, 2^bits].
    Rat dyadic(const Rat& lo, const Rat& hi, int bits) {
        uint64_t den = 1ull << bits;
        long k = static_cast<long>(below(den + 1));
        return lo + (hi - lo) * Rat(k, static_cast<long>(den));
    }

    /// Random dyadic direction vector with entries in {-1,...,1}, not all zero.
    VecR direction(int d, int bits = 6) {
        VecR v(d);
        bool nonzero = false;
        for (int i = 0; i < d; ++i) {
            v[i] = dyadic(Rat(-1), Rat(1), bits);
            nonzero = nonzero || !v[i].is_zero();
        }
        if (!nonzero) v[static_cast<Eigen::Index>(below(static_cast<uint64_t>(d)))] = Rat(1);
        return v;
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
        return z ^ (z >> 33);
    }

    uint64_t state_;
};

}  // namespace siglab
