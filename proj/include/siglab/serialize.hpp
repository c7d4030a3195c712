#pragma once

#include <json.hpp>

#include "siglab/construct.hpp"
#include "siglab/counting.hpp"

namespace siglab {

using Json = nlohmann::json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json vec_to_json(const VecR& v);
VecR vec_from_json(const Json& j);

/// A polynomial serializes as a list of {exponents, coeff}; the variable
/// count comes from context (bit-exact round trip).
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, int num_vars);

/// Family spec file: {name, d, lambda, preds, phi:{entries, default?}, domain}.
Json family_to_json(const Family& fam);
Family family_from_json(const Json& j);

/// {n, entries: [[i, j, label], ...]} with 1-based vertices, sorted
/// lexicographically.
Json labeling_to_json(const EdgeLabeling& el, const LabelSet& lambda);
EdgeLabeling labeling_from_json(const Json& j, const LabelSet& lambda);

Json seed_to_json(const SpanningSeed& seed, const Family& fam);
SpanningSeed seed_from_json(const Json& j, const Family& fam);

Json count_report_to_json(const CountReport& rep);
std::string count_report_csv_header();
std::string count_report_csv_row(const CountReport& rep);

}  // namespace siglab
