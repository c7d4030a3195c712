#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace siglab {

/// Exact rational scalar backed by GMP, kept canonical: lowest terms,
/// positive denominator. Arithmetic is eager (no gmpxx expression templates
/// leak out), so the type composes cleanly with Eigen.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_ = mpq_class(mpz_class(num), mpz_class(den));
        v_.canonicalize();
    }
    explicit Rat(mpz_class n) : v_(std::move(n)) {}
    explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "num" or "num/den" (decimal-free). Throws on anything else.
    static Rat parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rat: empty literal");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rat: bad literal '" + s + "'");
        if (q.get_den() == 0)
            throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
        q.canonicalize();
        Rat r;
        r.v_ = std::move(q);
        return r;
    }

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    double to_double() const { return v_.get_d(); }
    /// Canonical "num" / "num/den" string; round-trips bit-exactly.
    std::string str() const { return v_.get_str(); }

    Rat operator-() const {
        Rat r;
        r.v_ = -v_;
        return r;
    }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) >= 0; }

    Rat pow(unsigned e) const {
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), e);
        Rat r;
        r.v_ = mpq_class(n, d);  // coprime powers stay coprime
        return r;
    }

    Rat inverse() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        Rat r;
        r.v_ = 1 / v_;
        return r;
    }

    friend Rat abs(const Rat& x) {
        Rat r;
        r.v_ = abs(x.v_);
        return r;
    }

    /// Exact square root when the value is a perfect rational square.
    static bool exact_sqrt(const Rat& x, Rat& out) {
        if (x.sign() < 0) return false;
        mpz_class n = x.v_.get_num(), d = x.v_.get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return false;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
        out = Rat(mpq_class(sn, sd));
        return true;
    }

    /// Rounds to the nearest multiple of 2^-bits (ties toward +inf).
    static Rat round_dyadic(const Rat& x, int bits) {
        mpz_class scale = 1;
        mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
        mpq_class scaled = x.raw() * scale + mpq_class(1, 2);
        mpz_class k;
        mpz_fdiv_q(k.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        return Rat(mpq_class(k, scale));
    }

private:
    mpq_class v_;
};

}  // namespace siglab
