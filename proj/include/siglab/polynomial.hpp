#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "siglab/types.hpp"

namespace siglab {

/// Dense exponent vector, one entry per variable.
using ExpVec = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariants: every stored coefficient is nonzero; every exponent vector
/// has length num_vars(). The zero polynomial has an empty term map and is
/// flagged by is_zero() / degree() == -1.
class Polynomial {
public:
    explicit Polynomial(int num_vars = 0);
    static Polynomial constant(int num_vars, const Rat& c);
    static Polynomial variable(int num_vars, int var);

    int num_vars() const { return num_vars_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // max total degree; -1 for the zero polynomial
    const std::map<ExpVec, Rat>& terms() const { return terms_; }
    Rat coeff(const ExpVec& e) const;

    void add_term(const ExpVec& e, const Rat& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rat& c, const Polynomial& p);
    Polynomial operator-() const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

    Rat eval(const VecR& point) const;
    double eval_double(const std::vector<double>& point) const;

    Polynomial partial(int var) const;
    /// Fixes the first prefix.size() variables; the result lives in the rest.
    Polynomial substitute_prefix(const VecR& prefix) const;
    Polynomial substitute_value(int var, const Rat& value) const;
    /// Re-indexes onto the listed variables; every dropped variable must have
    /// exponent zero in all terms.
    Polynomial select_vars(const std::vector<int>& keep) const;

    std::string str() const;

private:
    int num_vars_;
    std::map<ExpVec, Rat> terms_;
};

std::pair<VecR, VecR> gradient_split(const Polynomial& P, const VecR& a, const VecR& b);

/// Exact coefficients (ascending) of t -> P(base + t*dir).
std::vector<Rat> restrict_to_line(const Polynomial& P, const VecR& base, const VecR& dir);

}  // namespace siglab
