#include "siglab/serialize.hpp"

#include <map>
#include <sstream>

#include "siglab/errors.hpp"

namespace siglab {

Json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (!j.is_string()) throw ConfigError("expected a rational literal string");
    return Rat::parse(j.get<std::string>());
}

Json vec_to_json(const VecR& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(rat_to_json(v[i]));
    return arr;
}

VecR vec_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigError("expected an array of rationals");
    VecR v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = rat_from_json(j[i]);
    return v;
}

Json polynomial_to_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json term;
        term["exponents"] = e;
        term["coeff"] = c.str();
        arr.push_back(std::move(term));
    }
    return arr;
}

Polynomial polynomial_from_json(const Json& j, int num_vars) {
    if (!j.is_array()) throw ConfigError("polynomial: expected a term list");
    Polynomial p(num_vars);
    for (const auto& term : j) {
        ExpVec e = term.at("exponents").get<ExpVec>();
        p.add_term(e, rat_from_json(term.at("coeff")));
    }
    return p;
}

Json family_to_json(const Family& fam) {
    Json j;
    j["name"] = fam.name;
    j["d"] = fam.d;
    j["lambda"] = fam.lambda.names();
    Json preds = Json::array();
    for (const auto& p : fam.preds) preds.push_back(polynomial_to_json(p));
    j["preds"] = std::move(preds);

    // Emit the most common label as the default and the rest explicitly.
    std::vector<size_t> hist(static_cast<size_t>(fam.lambda.size()), 0);
    for (size_t idx = 0; idx < fam.phi.table_size(); ++idx)
        ++hist[static_cast<size_t>(fam.phi.at_index(idx))];
    int def = static_cast<int>(std::max_element(hist.begin(), hist.end()) - hist.begin());
    Json entries = Json::object();
    for (size_t idx = 0; idx < fam.phi.table_size(); ++idx) {
        int lab = fam.phi.at_index(idx);
        if (lab == def) continue;
        entries[PhiTable::sign_string(PhiTable::signs_at(idx, fam.k()))] = fam.lambda.name(lab);
    }
    j["phi"] = Json{{"entries", std::move(entries)}, {"default", fam.lambda.name(def)}};

    Json dom;
    dom["polys"] = Json::array();
    for (const auto& q : fam.domain.polys) dom["polys"].push_back(polynomial_to_json(q));
    dom["accept"] = std::vector<std::string>(fam.domain.accept.begin(), fam.domain.accept.end());
    j["domain"] = std::move(dom);
    return j;
}

Family family_from_json(const Json& j) {
    Family fam;
    fam.name = j.at("name").get<std::string>();
    fam.d = j.at("d").get<int>();
    fam.lambda = LabelSet(j.at("lambda").get<std::vector<std::string>>());
    for (const auto& pj : j.at("preds")) fam.preds.push_back(polynomial_from_json(pj, 2 * fam.d));

    const Json& phij = j.at("phi");
    std::map<std::string, int> entries;
    if (phij.contains("entries"))
        for (auto it = phij.at("entries").begin(); it != phij.at("entries").end(); ++it)
            entries[it.key()] = fam.lambda.index_of(it.value().get<std::string>());
    std::optional<int> def;
    if (phij.contains("default")) def = fam.lambda.index_of(phij.at("default").get<std::string>());
    fam.phi = PhiTable::from_entries(static_cast<int>(fam.preds.size()), entries, def);

    fam.domain.d = fam.d;
    if (j.contains("domain")) {
        const Json& dj = j.at("domain");
        if (dj.contains("polys"))
            for (const auto& qj : dj.at("polys"))
                fam.domain.polys.push_back(polynomial_from_json(qj, fam.d));
        if (dj.contains("accept"))
            for (const auto& s : dj.at("accept")) fam.domain.accept.insert(s.get<std::string>());
    }
    if (fam.domain.polys.empty() && fam.domain.accept.empty()) fam.domain.accept.insert("");
    fam.validate();
    return fam;
}

Json labeling_to_json(const EdgeLabeling& el, const LabelSet& lambda) {
    Json entries = Json::array();
    for (int i = 0; i < el.n(); ++i)
        for (int j = i + 1; j < el.n(); ++j)
            entries.push_back(Json::array({i + 1, j + 1, lambda.name(el.label(i, j))}));
    return Json{{"n", el.n()}, {"entries", std::move(entries)}};
}

EdgeLabeling labeling_from_json(const Json& j, const LabelSet& lambda) {
    EdgeLabeling el(j.at("n").get<int>());
    for (const auto& e : j.at("entries")) {
        int a = e.at(0).get<int>() - 1;
        int b = e.at(1).get<int>() - 1;
        el.set_label(a, b, lambda.index_of(e.at(2).get<std::string>()));
    }
    return el;
}

Json seed_to_json(const SpanningSeed& seed, const Family& fam) {
    Json pairs = Json::array();
    for (const auto& p : seed.pairs) {
        Json pj;
        pj["b"] = vec_to_json(p.b);
        pj["wall_index"] = p.cert.wall_index + 1;
        pj["signs"] = PhiTable::sign_string(p.cert.signs);
        pj["grad_b"] = vec_to_json(p.cert.grad_b);
        pj["flip"] = Json::array(
            {fam.lambda.name(p.cert.flip.first), fam.lambda.name(p.cert.flip.second)});
        pairs.push_back(std::move(pj));
    }
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < seed.grad_matrix.rows(); ++i)
        rows.push_back(vec_to_json(seed.grad_matrix.row(i).transpose()));
    return Json{{"family", fam.name},
                {"a_star", vec_to_json(seed.a_star)},
                {"pairs", std::move(pairs)},
                {"grad_matrix", std::move(rows)},
                {"det", seed.det.str()}};
}

SpanningSeed seed_from_json(const Json& j, const Family& fam) {
    SpanningSeed seed;
    seed.a_star = vec_from_json(j.at("a_star"));
    for (const auto& pj : j.at("pairs")) {
        WallPairSeed p;
        p.a = seed.a_star;
        p.b = vec_from_json(pj.at("b"));
        p.cert.wall_index = pj.at("wall_index").get<int>() - 1;
        p.cert.signs = PhiTable::parse_sign_string(pj.at("signs").get<std::string>());
        p.cert.grad_b = vec_from_json(pj.at("grad_b"));
        p.cert.flip = {fam.lambda.index_of(pj.at("flip").at(0).get<std::string>()),
                       fam.lambda.index_of(pj.at("flip").at(1).get<std::string>())};
        seed.pairs.push_back(std::move(p));
    }
    const Json& rows = j.at("grad_matrix");
    seed.grad_matrix = MatR(static_cast<Eigen::Index>(rows.size()), fam.d);
    for (size_t i = 0; i < rows.size(); ++i)
        seed.grad_matrix.row(static_cast<Eigen::Index>(i)) = vec_from_json(rows[i]).transpose();
    seed.det = Rat::parse(j.at("det").get<std::string>());
    recertify(fam, seed);
    return seed;
}

Json count_report_to_json(const CountReport& rep) {
    Json j{{"family", rep.family},     {"n", rep.n},
           {"trials", rep.trials},     {"distinct", rep.distinct_count},
           {"saturated", rep.saturated}, {"strong_only", rep.strong_only},
           {"exponent", rep.exponent}};
    if (rep.warren) j["warren"] = rep.warren->get_str();
    if (rep.lower) j["lower"] = rep.lower->get_str();
    return j;
}

std::string count_report_csv_header() {
    return "family,n,trials,distinct,saturated,strong_only,warren,lower,exponent";
}

std::string count_report_csv_row(const CountReport& rep) {
    std::ostringstream os;
    os << rep.family << ',' << rep.n << ',' << rep.trials << ',' << rep.distinct_count << ','
       << (rep.saturated ? "true" : "false") << ',' << (rep.strong_only ? "true" : "false") << ','
       << (rep.warren ? rep.warren->get_str() : "") << ','
       << (rep.lower ? rep.lower->get_str() : "") << ',' << rep.exponent;
    return os.str();
}

}  // namespace siglab
