#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "siglab/rational.hpp"

namespace Eigen {
template <>
struct NumTraits<siglab::Rat> : GenericNumTraits<siglab::Rat> {
    using Real = siglab::Rat;
    using NonInteger = siglab::Rat;
    using Literal = siglab::Rat;
    using Nested = siglab::Rat;
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60
    };
};
}  // namespace Eigen

namespace siglab {

using VecR = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using MatR = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

enum class Sign : int { Minus = -1, Zero = 0, Plus = 1 };

inline Sign sign_of(const Rat& v) {
    int s = v.sign();
    return s > 0 ? Sign::Plus : (s < 0 ? Sign::Minus : Sign::Zero);
}

inline char sign_char(Sign s) {
    switch (s) {
        case Sign::Plus: return '+';
        case Sign::Minus: return '-';
        default: return '0';
    }
}

inline Sign sign_from_char(char c) {
    switch (c) {
        case '+': return Sign::Plus;
        case '-': return Sign::Minus;
        case '0': return Sign::Zero;
        default: throw std::invalid_argument(std::string("bad sign character '") + c + "'");
    }
}

inline Sign flip(Sign s) {
    return s == Sign::Plus ? Sign::Minus : (s == Sign::Minus ? Sign::Plus : Sign::Zero);
}

inline bool vec_equal(const VecR& a, const VecR& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

inline VecR concat(const VecR& a, const VecR& b) {
    VecR r(a.size() + b.size());
    r.head(a.size()) = a;
    r.tail(b.size()) = b;
    return r;
}

inline VecR vec_from(std::vector<Rat> xs) {
    VecR r(static_cast<Eigen::Index>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) r[static_cast<Eigen::Index>(i)] = std::move(xs[i]);
    return r;
}

/// Axis-aligned sampling box with inclusive rational bounds.
struct BoxSpec {
    std::vector<std::pair<Rat, Rat>> coords;

    static BoxSpec uniform(int d, Rat lo, Rat hi) {
        BoxSpec b;
        b.coords.assign(static_cast<size_t>(d), {std::move(lo), std::move(hi)});
        return b;
    }
    int dim() const { return static_cast<int>(coords.size()); }

    void require_positive_volume() const {
        for (const auto& [lo, hi] : coords)
            if (!(lo < hi)) throw std::invalid_argument("box must have positive volume");
    }
};

/// Smallest integer >= sqrt(d); used as a rational over-estimate of sqrt(d).
inline long ceil_sqrt_long(long d) {
    long s = 0;
    while (s * s < d) ++s;
    return s;
}

}  // namespace siglab
