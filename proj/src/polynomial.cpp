#include "siglab/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "siglab/errors.hpp"

namespace siglab {

namespace {

std::uint32_t total_degree(const ExpVec& e) {
    std::uint32_t d = 0;
    for (auto x : e) d += x;
    return d;
}

}  // namespace

Polynomial::Polynomial(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("Polynomial: negative variable count");
}

Polynomial Polynomial::constant(int num_vars, const Rat& c) {
    Polynomial p(num_vars);
    p.add_term(ExpVec(static_cast<size_t>(num_vars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int num_vars, int var) {
    if (var < 0 || var >= num_vars) throw std::invalid_argument("Polynomial: variable index out of range");
    Polynomial p(num_vars);
    ExpVec e(static_cast<size_t>(num_vars), 0);
    e[static_cast<size_t>(var)] = 1;
    p.add_term(e, Rat(1));
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
}

Rat Polynomial::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Polynomial::add_term(const ExpVec& e, const Rat& c) {
    if (static_cast<int>(e.size()) != num_vars_)
        throw std::invalid_argument("Polynomial: exponent vector length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    Polynomial r(a.num_vars_);
    ExpVec e(static_cast<size_t>(a.num_vars_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial operator*(const Rat& c, const Polynomial& p) {
    Polynomial r(p.num_vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
    return r;
}

Polynomial Polynomial::operator-() const { return Rat(-1) * (*this); }

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = Polynomial::constant(num_vars_, Rat(1));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

Rat Polynomial::eval(const VecR& point) const {
    if (static_cast<int>(point.size()) != num_vars_)
        throw std::invalid_argument("Polynomial::eval: point dimension mismatch");
    std::vector<std::uint32_t> maxe(static_cast<size_t>(num_vars_), 0);
    for (const auto& [e, c] : terms_)
        for (size_t i = 0; i < e.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
    std::vector<std::vector<Rat>> pw(static_cast<size_t>(num_vars_));
    for (size_t i = 0; i < pw.size(); ++i) {
        pw[i].resize(maxe[i] + 1);
        pw[i][0] = Rat(1);
        for (std::uint32_t k = 1; k <= maxe[i]; ++k)
            pw[i][k] = pw[i][k - 1] * point[static_cast<Eigen::Index>(i)];
    }
    Rat sum(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= pw[i][e[i]];
        sum += t;
    }
    return sum;
}

double Polynomial::eval_double(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != num_vars_)
        throw std::invalid_argument("Polynomial::eval_double: point dimension mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.to_double();
        for (size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::partial(int var) const {
    if (var < 0 || var >= num_vars_) throw std::invalid_argument("Polynomial::partial: bad variable");
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) {
        std::uint32_t k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        ExpVec e2 = e;
        e2[static_cast<size_t>(var)] = k - 1;
        r.add_term(e2, Rat(static_cast<long>(k)) * c);
    }
    return r;
}

Polynomial Polynomial::substitute_prefix(const VecR& prefix) const {
    int p = static_cast<int>(prefix.size());
    if (p > num_vars_) throw std::invalid_argument("substitute_prefix: prefix too long");
    Polynomial r(num_vars_ - p);
    ExpVec tail(static_cast<size_t>(num_vars_ - p));
    for (const auto& [e, c] : terms_) {
        Rat factor = c;
        for (int i = 0; i < p; ++i)
            if (e[static_cast<size_t>(i)] > 0) factor *= prefix[i].pow(e[static_cast<size_t>(i)]);
        for (int i = p; i < num_vars_; ++i) tail[static_cast<size_t>(i - p)] = e[static_cast<size_t>(i)];
        r.add_term(tail, factor);
    }
    return r;
}

Polynomial Polynomial::substitute_value(int var, const Rat& value) const {
    if (var < 0 || var >= num_vars_) throw std::invalid_argument("substitute_value: bad variable");
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) {
        std::uint32_t k = e[static_cast<size_t>(var)];
        if (k == 0) {
            r.add_term(e, c);
        } else {
            ExpVec e2 = e;
            e2[static_cast<size_t>(var)] = 0;
            r.add_term(e2, c * value.pow(k));
        }
    }
    return r;
}

Polynomial Polynomial::select_vars(const std::vector<int>& keep) const {
    std::vector<bool> kept(static_cast<size_t>(num_vars_), false);
    for (int v : keep) {
        if (v < 0 || v >= num_vars_) throw std::invalid_argument("select_vars: bad variable");
        kept[static_cast<size_t>(v)] = true;
    }
    Polynomial r(static_cast<int>(keep.size()));
    ExpVec e2(keep.size());
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < num_vars_; ++i)
            if (!kept[static_cast<size_t>(i)] && e[static_cast<size_t>(i)] != 0)
                throw InvariantError("select_vars: dropped variable occurs in a term");
        for (size_t i = 0; i < keep.size(); ++i) e2[i] = e[static_cast<size_t>(keep[i])];
        r.add_term(e2, c);
    }
    return r;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*x" << i;
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::pair<VecR, VecR> gradient_split(const Polynomial& P, const VecR& a, const VecR& b) {
    if (static_cast<int>(a.size() + b.size()) != P.num_vars())
        throw std::invalid_argument("gradient_split: dimension mismatch");
    VecR point = concat(a, b);
    VecR ga(a.size()), gb(b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) ga[i] = P.partial(static_cast<int>(i)).eval(point);
    for (Eigen::Index i = 0; i < b.size(); ++i)
        gb[i] = P.partial(static_cast<int>(a.size() + i)).eval(point);
    return {std::move(ga), std::move(gb)};
}

std::vector<Rat> restrict_to_line(const Polynomial& P, const VecR& base, const VecR& dir) {
    if (base.size() != dir.size() || static_cast<int>(base.size()) != P.num_vars())
        throw std::invalid_argument("restrict_to_line: dimension mismatch");
    int deg = std::max(P.degree(), 0);
    // Newton interpolation through the exact values at t = 0..deg.
    std::vector<Rat> nodes(static_cast<size_t>(deg) + 1), vals(static_cast<size_t>(deg) + 1);
    for (int t = 0; t <= deg; ++t) {
        nodes[static_cast<size_t>(t)] = Rat(static_cast<long>(t));
        vals[static_cast<size_t>(t)] = P.eval(base + Rat(static_cast<long>(t)) * dir);
    }
    std::vector<Rat> dd = vals;  // divided differences, in place
    for (size_t level = 1; level < dd.size(); ++level)
        for (size_t i = dd.size() - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
    // Expand the Newton form into monomial coefficients.
    std::vector<Rat> coeffs(dd.size(), Rat(0));
    std::vector<Rat> basis{Rat(1)};  // product (t - x_0)...(t - x_{i-1})
    for (size_t i = 0; i < dd.size(); ++i) {
        for (size_t j = 0; j < basis.size(); ++j) coeffs[j] += dd[i] * basis[j];
        if (i + 1 < dd.size()) {
            basis.push_back(Rat(0));
            for (size_t j = basis.size() - 1; j > 0; --j)
                basis[j] = basis[j - 1] - nodes[i] * basis[j];
            basis[0] = -nodes[i] * basis[0];
        }
    }
    while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
    return coeffs;
}

}  // namespace siglab
