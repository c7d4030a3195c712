#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "siglab/errors.hpp"
#include "siglab/polynomial.hpp"
#include "siglab/rng.hpp"

namespace siglab {

/// Finite ordered set of distinct label names.
class LabelSet {
public:
    LabelSet() = default;
    explicit LabelSet(std::vector<std::string> names);
    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int idx) const { return names_.at(static_cast<size_t>(idx)); }
    int index_of(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }
    friend bool operator==(const LabelSet& a, const LabelSet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

/// Total table for phi over all 3^k sign vectors. Sign vectors index the
/// table in base 3, most significant digit first, with + -> 0, - -> 1, 0 -> 2.
class PhiTable {
public:
    PhiTable() = default;
    PhiTable(int k, std::vector<int> table, std::vector<bool> defaulted = {});
    static PhiTable from_function(int k, const std::function<int(const std::vector<Sign>&)>& fn);
    /// Completes a partial sign-string -> label map with a default label,
    /// recording which entries were defaulted.
    static PhiTable from_entries(int k, const std::map<std::string, int>& entries,
                                 std::optional<int> default_label);

    int k() const { return k_; }
    size_t table_size() const { return table_.size(); }
    int operator()(const std::vector<Sign>& sig) const { return table_.at(index_of(sig)); }
    int at_index(size_t idx) const { return table_.at(idx); }
    bool was_defaulted(size_t idx) const { return defaulted_.empty() ? false : defaulted_.at(idx); }
    size_t defaulted_count() const;

    static size_t index_of(const std::vector<Sign>& sig);
    static std::vector<Sign> signs_at(size_t idx, int k);
    static std::string sign_string(const std::vector<Sign>& sig);
    static std::vector<Sign> parse_sign_string(const std::string& s);

    friend bool operator==(const PhiTable& a, const PhiTable& b) {
        return a.k_ == b.k_ && a.table_ == b.table_;
    }

private:
    int k_ = 0;
    std::vector<int> table_;
    std::vector<bool> defaulted_;
};

/// Subset of R^d cut out by the sign vectors of Q_1..Q_l landing in `accept`.
struct DomainSpec {
    int d = 0;
    std::vector<Polynomial> polys;   // each in d variables
    std::set<std::string> accept;    // sign strings of length polys.size()

    static DomainSpec whole_space(int d);
};

bool membership(const DomainSpec& domain, const VecR& p);

/// The full tuple (Lambda, d, P_1..P_k, phi, U) plus a name.
struct Family {
    std::string name;
    int d = 0;
    LabelSet lambda;
    std::vector<Polynomial> preds;  // k polynomials in 2d variables
    PhiTable phi;
    DomainSpec domain;

    int k() const { return static_cast<int>(preds.size()); }
    int max_pred_degree() const;
    void validate() const;  // throws ConfigError if any invariant is broken
};

struct Configuration {
    std::vector<VecR> points;
    int n() const { return static_cast<int>(points.size()); }
};

/// Label assignment on the edges of K_n; pairs (i, j) with 0 <= i < j < n.
class EdgeLabeling {
public:
    EdgeLabeling() = default;
    explicit EdgeLabeling(int n) : n_(n), labels_(pair_count_of(n), -1) {}

    int n() const { return n_; }
    static size_t pair_count_of(int n) { return static_cast<size_t>(n) * (n - 1) / 2; }
    size_t pair_count() const { return labels_.size(); }
    static size_t pair_index(int n, int i, int j);

    int label(int i, int j) const { return labels_[pair_index(n_, i, j)]; }
    void set_label(int i, int j, int lab) { labels_[pair_index(n_, i, j)] = lab; }
    const std::vector<int>& flat() const { return labels_; }

    friend bool operator==(const EdgeLabeling& a, const EdgeLabeling& b) {
        return a.n_ == b.n_ && a.labels_ == b.labels_;
    }

private:
    int n_ = 0;
    std::vector<int> labels_;
};

std::vector<Sign> sign_vector(const Family& fam, const VecR& a, const VecR& b);
int pair_label(const Family& fam, const VecR& a, const VecR& b);
EdgeLabeling label_configuration(const Family& fam, const Configuration& cfg);
bool strong_check(const Family& fam, const Configuration& cfg);

struct SeparationCert {
    VecR b;
    std::vector<Sign> sig_a, sig_a2;
    int label_a = -1, label_a2 = -1;
};

/// Searches for b in U separating a from a' per the main hypothesis; absence
/// after the budget is not a disproof. The certificate re-verifies exactly.
std::optional<SeparationCert> separation_witness(const Family& fam, const VecR& a, const VecR& a2,
                                                 Rng& rng, const BoxSpec& box, int bits,
                                                 long budget);

}  // namespace siglab
