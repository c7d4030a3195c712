#include "siglab/family.hpp"

#include <algorithm>

#include "siglab/errors.hpp"

namespace siglab {

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw ConfigError("label set must be non-empty");
    for (size_t i = 0; i < names_.size(); ++i) {
        auto [it, fresh] = index_.emplace(names_[i], static_cast<int>(i));
        if (!fresh) throw ConfigError("duplicate label '" + names_[i] + "'");
    }
}

int LabelSet::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ConfigError("unknown label '" + name + "'");
    return it->second;
}

PhiTable::PhiTable(int k, std::vector<int> table, std::vector<bool> defaulted)
    : k_(k), table_(std::move(table)), defaulted_(std::move(defaulted)) {
    size_t want = 1;
    for (int i = 0; i < k; ++i) want *= 3;
    if (table_.size() != want) throw ConfigError("phi table has wrong size");
    if (!defaulted_.empty() && defaulted_.size() != want)
        throw ConfigError("phi defaulted-flag vector has wrong size");
}

PhiTable PhiTable::from_function(int k, const std::function<int(const std::vector<Sign>&)>& fn) {
    size_t total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    std::vector<int> table(total);
    for (size_t idx = 0; idx < total; ++idx) table[idx] = fn(signs_at(idx, k));
    return PhiTable(k, std::move(table));
}

PhiTable PhiTable::from_entries(int k, const std::map<std::string, int>& entries,
                                std::optional<int> default_label) {
    size_t total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    std::vector<int> table(total, -1);
    std::vector<bool> defaulted(total, false);
    for (const auto& [s, lab] : entries) {
        auto sig = parse_sign_string(s);
        if (static_cast<int>(sig.size()) != k) throw ConfigError("phi entry '" + s + "' has wrong arity");
        table[index_of(sig)] = lab;
    }
    for (size_t idx = 0; idx < total; ++idx) {
        if (table[idx] >= 0) continue;
        if (!default_label)
            throw ConfigError("phi table incomplete (missing '" + sign_string(signs_at(idx, k)) +
                              "') and no default label given");
        table[idx] = *default_label;
        defaulted[idx] = true;
    }
    return PhiTable(k, std::move(table), std::move(defaulted));
}

size_t PhiTable::defaulted_count() const {
    return static_cast<size_t>(std::count(defaulted_.begin(), defaulted_.end(), true));
}

size_t PhiTable::index_of(const std::vector<Sign>& sig) {
    size_t idx = 0;
    for (Sign s : sig) {
        size_t digit = s == Sign::Plus ? 0 : (s == Sign::Minus ? 1 : 2);
        idx = idx * 3 + digit;
    }
    return idx;
}

std::vector<Sign> PhiTable::signs_at(size_t idx, int k) {
    std::vector<Sign> sig(static_cast<size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        size_t digit = idx % 3;
        idx /= 3;
        sig[static_cast<size_t>(i)] =
            digit == 0 ? Sign::Plus : (digit == 1 ? Sign::Minus : Sign::Zero);
    }
    return sig;
}

std::string PhiTable::sign_string(const std::vector<Sign>& sig) {
    std::string s;
    s.reserve(sig.size());
    for (Sign x : sig) s.push_back(sign_char(x));
    return s;
}

std::vector<Sign> PhiTable::parse_sign_string(const std::string& s) {
    std::vector<Sign> sig;
    sig.reserve(s.size());
    for (char c : s) sig.push_back(sign_from_char(c));
    return sig;
}

DomainSpec DomainSpec::whole_space(int d) {
    DomainSpec u;
    u.d = d;
    u.accept.insert("");  // the empty sign vector
    return u;
}

bool membership(const DomainSpec& domain, const VecR& p) {
    if (static_cast<int>(p.size()) != domain.d)
        throw ConfigError("membership: point dimension mismatch");
    std::string sig;
    sig.reserve(domain.polys.size());
    for (const auto& q : domain.polys) sig.push_back(sign_char(sign_of(q.eval(p))));
    return domain.accept.count(sig) > 0;
}

int Family::max_pred_degree() const {
    int d = 0;
    for (const auto& p : preds) d = std::max(d, p.degree());
    return d;
}

void Family::validate() const {
    if (d <= 0) throw ConfigError("family '" + name + "': d must be positive");
    if (lambda.size() == 0) throw ConfigError("family '" + name + "': empty label set");
    if (preds.empty()) throw ConfigError("family '" + name + "': empty predicate list");
    if (phi.k() != k()) throw ConfigError("family '" + name + "': phi arity != predicate count");
    if (domain.d != d) throw ConfigError("family '" + name + "': domain dimension mismatch");
    for (const auto& p : preds) {
        if (p.num_vars() != 2 * d)
            throw ConfigError("family '" + name + "': predicate variable count != 2d");
        if (p.is_zero()) throw ConfigError("family '" + name + "': zero predicate not allowed");
    }
    for (const auto& q : domain.polys)
        if (q.num_vars() != d) throw ConfigError("family '" + name + "': domain polynomial arity != d");
    for (const auto& s : domain.accept)
        if (s.size() != domain.polys.size())
            throw ConfigError("family '" + name + "': accept sign string arity mismatch");
    for (size_t idx = 0; idx < phi.table_size(); ++idx) {
        int lab = phi.at_index(idx);
        if (lab < 0 || lab >= lambda.size())
            throw ConfigError("family '" + name + "': phi output out of label range");
    }
}

size_t EdgeLabeling::pair_index(int n, int i, int j) {
    if (!(0 <= i && i < j && j < n)) throw ConfigError("EdgeLabeling: bad pair index");
    // pairs in lexicographic (i, j) order
    size_t before = static_cast<size_t>(i) * n - static_cast<size_t>(i) * (i + 1) / 2;
    return before + static_cast<size_t>(j - i - 1);
}

std::vector<Sign> sign_vector(const Family& fam, const VecR& a, const VecR& b) {
    VecR point = concat(a, b);
    std::vector<Sign> sig;
    sig.reserve(fam.preds.size());
    for (const auto& p : fam.preds) sig.push_back(sign_of(p.eval(point)));
    return sig;
}

int pair_label(const Family& fam, const VecR& a, const VecR& b) {
    if (!membership(fam.domain, a) || !membership(fam.domain, b))
        throw ConfigError("pair_label: point outside the family domain");
    return fam.phi(sign_vector(fam, a, b));
}

EdgeLabeling label_configuration(const Family& fam, const Configuration& cfg) {
    for (const auto& p : cfg.points)
        if (!membership(fam.domain, p))
            throw ConfigError("label_configuration: point outside the family domain");
    int n = cfg.n();
    EdgeLabeling el(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            el.set_label(i, j, fam.phi(sign_vector(fam, cfg.points[static_cast<size_t>(i)],
                                                   cfg.points[static_cast<size_t>(j)])));
    return el;
}

bool strong_check(const Family& fam, const Configuration& cfg) {
    int n = cfg.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            VecR point = concat(cfg.points[static_cast<size_t>(i)], cfg.points[static_cast<size_t>(j)]);
            for (const auto& p : fam.preds)
                if (p.eval(point).is_zero()) return false;
        }
    return true;
}

namespace {

bool all_nonzero(const std::vector<Sign>& sig) {
    for (Sign s : sig)
        if (s == Sign::Zero) return false;
    return true;
}

}  // namespace

std::optional<SeparationCert> separation_witness(const Family& fam, const VecR& a, const VecR& a2,
                                                 Rng& rng, const BoxSpec& box, int bits,
                                                 long budget) {
    if (vec_equal(a, a2)) throw ConfigError("separation_witness: the two points must be distinct");
    if (!membership(fam.domain, a) || !membership(fam.domain, a2))
        throw ConfigError("separation_witness: point outside the family domain");

    auto try_candidate = [&](const VecR& b) -> std::optional<SeparationCert> {
        if (static_cast<int>(b.size()) != fam.d || !membership(fam.domain, b)) return std::nullopt;
        auto sa = sign_vector(fam, a, b);
        auto sa2 = sign_vector(fam, a2, b);
        if (!all_nonzero(sa) || !all_nonzero(sa2)) return std::nullopt;
        int la = fam.phi(sa), la2 = fam.phi(sa2);
        if (la == la2) return std::nullopt;
        return SeparationCert{b, std::move(sa), std::move(sa2), la, la2};
    };

    // Deterministic probes near a and a' first; the hypothesis is often
    // witnessed by a point adjacent to one of them.
    std::vector<Rat> steps{Rat(1, 8), Rat(1, 64), Rat(1, 2), Rat(1)};
    for (const Rat& eta : steps) {
        for (const VecR* base : {&a, &a2}) {
            for (int c = 0; c < fam.d; ++c) {
                for (int dir : {1, -1}) {
                    VecR b = *base;
                    b[c] += Rat(dir) * eta;
                    if (auto cert = try_candidate(b)) return cert;
                }
            }
            if (auto cert = try_candidate(*base)) return cert;
        }
    }
    if (box.dim() != fam.d) throw ConfigError("separation_witness: box dimension mismatch");
    for (long t = 0; t < budget; ++t) {
        VecR b(fam.d);
        for (int c = 0; c < fam.d; ++c)
            b[c] = rng.dyadic(box.coords[static_cast<size_t>(c)].first,
                              box.coords[static_cast<size_t>(c)].second, bits);
        if (auto cert = try_candidate(b)) return cert;
    }
    return std::nullopt;
}

}  // namespace siglab
