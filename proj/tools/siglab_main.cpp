#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "siglab/serialize.hpp"

namespace {

using namespace siglab;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kConfig = 2,
    kExhausted = 3,
    kInvariant = 4,
};

struct CommonOpts {
    std::string family;
    std::string spec_file;
    std::string box = "-8:8";
    int bits = 20;
    std::string out_dir;
    std::string format = "json";
    uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
};

Family load_family(const CommonOpts& c) {
    if (!c.spec_file.empty()) {
        std::ifstream in(c.spec_file);
        if (!in) throw ConfigError("cannot open family spec file '" + c.spec_file + "'");
        Json j;
        in >> j;
        return family_from_json(j);
    }
    if (c.family.empty()) throw ConfigError("missing --family or --spec");
    return builtin(c.family);
}

BoxSpec parse_box(const std::string& text, int d) {
    auto parse_range = [](const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ConfigError("box range must look like 'lo:hi'");
        return std::make_pair(Rat::parse(s.substr(0, colon)), Rat::parse(s.substr(colon + 1)));
    };
    BoxSpec box;
    if (text.find(',') == std::string::npos) {
        auto r = parse_range(text);
        box = BoxSpec::uniform(d, r.first, r.second);
    } else {
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) box.coords.push_back(parse_range(part));
        if (box.dim() != d)
            throw ConfigError("box lists " + std::to_string(box.dim()) + " ranges but d = " +
                              std::to_string(d));
    }
    box.require_positive_volume();
    return box;
}

std::string now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

Configuration load_points(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open points file '" + path + "'");
    Json j;
    in >> j;
    Configuration cfg;
    for (const auto& pj : j.at("points")) {
        VecR p = vec_from_json(pj);
        if (static_cast<int>(p.size()) != d)
            throw ConfigError("point dimension != family dimension in '" + path + "'");
        cfg.points.push_back(std::move(p));
    }
    return cfg;
}

std::string g_started;

void emit(const CommonOpts& c, const std::string& command, const Json& config_echo,
          const Json& payload, const std::string& csv = "") {
    if (c.format == "csv" && !csv.empty()) {
        std::cout << csv << "\n";
    } else if (c.format == "human") {
        for (auto it = payload.begin(); it != payload.end(); ++it)
            std::cout << "  " << it.key() << ": " << it.value().dump() << "\n";
    } else {
        std::cout << payload.dump() << "\n";
    }
    if (c.out_dir.empty()) return;
    fs::create_directories(c.out_dir);
    {
        std::ofstream p(fs::path(c.out_dir) / "payload.json");
        p << payload.dump() << "\n";
    }
    Json manifest{{"artifact_version", kVersion},
                  {"command", command},
                  {"config", config_echo},
                  {"started", g_started},
                  {"finished", now_iso()},
                  {"exact_arithmetic", true},
                  {"payload", "payload.json"}};
    if (!csv.empty()) {
        std::ofstream cf(fs::path(c.out_dir) / "payload.csv");
        cf << count_report_csv_header() << "\n" << csv << "\n";
    }
    std::ofstream m(fs::path(c.out_dir) / "manifest.json");
    m << manifest.dump(2) << "\n";
}

void require_seed(const CommonOpts& c) {
    if (!c.seed_set)
        throw ConfigError("--seed is required for stochastic subcommands (no random default)");
}

int dispatch(CLI::App& app, CommonOpts& c, int n, int m, long trials, long budget, bool strong,
             long cap, const std::string& points_file, const std::string& seed_file,
             const std::string& emit_file) {
    Json config{{"family", c.family}, {"spec", c.spec_file},  {"box", c.box},
                {"bits", c.bits},     {"seed", c.seed},       {"workers", c.workers},
                {"n", n},             {"m", m},               {"trials", trials},
                {"budget", budget},   {"strong", strong}};

    if (app.got_subcommand("export-family")) {
        Family fam = load_family(c);
        emit(c, "export-family", config, family_to_json(fam));
        return kOk;
    }
    if (app.got_subcommand("bound")) {
        Family fam = load_family(c);
        long D = fam.max_pred_degree();
        mpz_class w = warren_bound(n, fam.d, fam.k(), D);
        Json payload{{"family", fam.name}, {"n", n},          {"d", fam.d},
                     {"k", fam.k()},       {"max_degree", D}, {"warren", w.get_str()}};
        emit(c, "bound", config, payload);
        return kOk;
    }
    if (app.got_subcommand("lower")) {
        Family fam = load_family(c);
        mpz_class v = lower_bound_formula(n, m, fam.d);
        Json payload{{"family", fam.name}, {"n", n}, {"m", m}, {"d", fam.d}, {"lower", v.get_str()}};
        emit(c, "lower", config, payload);
        return kOk;
    }
    if (app.got_subcommand("label")) {
        Family fam = load_family(c);
        Configuration cfg = load_points(points_file, fam.d);
        EdgeLabeling el = label_configuration(fam, cfg);
        Json payload{{"family", fam.name},
                     {"labeling", labeling_to_json(el, fam.lambda)},
                     {"strong", strong_check(fam, cfg)}};
        emit(c, "label", config, payload);
        return kOk;
    }
    if (app.got_subcommand("count")) {
        require_seed(c);
        Family fam = load_family(c);
        SampleOptions opts;
        opts.box = parse_box(c.box, fam.d);
        opts.bits = c.bits;
        opts.strong_only = strong;
        opts.workers = c.workers;
        if (m > 0) opts.lower_m = m;
        CountReport rep = sample_count(fam, n, trials, c.seed, opts);
        emit(c, "count", config, count_report_to_json(rep), count_report_csv_row(rep));
        return kOk;
    }
    if (app.got_subcommand("wallpair")) {
        require_seed(c);
        Family fam = load_family(c);
        Rng rng(c.seed);
        WallSearchOptions opts{parse_box(c.box, fam.d), c.bits, budget};
        auto r = find_spanning_seed(fam, rng, opts);
        if (!r.seed) {
            std::cerr << "wallpair: " << r.diagnostic << "\n";
            return kExhausted;
        }
        recertify(fam, *r.seed);
        emit(c, "wallpair", config, seed_to_json(*r.seed, fam));
        return kOk;
    }
    if (app.got_subcommand("construct")) {
        require_seed(c);
        Family fam = load_family(c);
        Rng rng(c.seed);
        SpanningSeed seed;
        if (!seed_file.empty()) {
            std::ifstream in(seed_file);
            if (!in) throw ConfigError("cannot open seed file '" + seed_file + "'");
            Json j;
            in >> j;
            seed = seed_from_json(j, fam);
        } else {
            WallSearchOptions opts{parse_box(c.box, fam.d), c.bits, budget};
            auto r = find_spanning_seed(fam, rng, opts);
            if (!r.seed) {
                std::cerr << "construct: no spanning seed: " << r.diagnostic << "\n";
                return kExhausted;
            }
            seed = std::move(*r.seed);
        }
        std::ofstream emit_out;
        if (!emit_file.empty()) {
            emit_out.open(emit_file);
            if (!emit_out) throw ConfigError("cannot open --emit file '" + emit_file + "'");
        }
        std::set<std::string> dedup;
        bool all_strong = true;
        FactoryStats stats = generate_labelings(
            fam, seed, n, m, rng, [&](const EdgeLabeling& el, const Configuration& cfg) {
                dedup.insert(canonical_bytes(el));
                all_strong = all_strong && strong_check(fam, cfg);
                if (emit_out.is_open())
                    emit_out << labeling_to_json(el, fam.lambda).dump() << "\n";
            },
            cap);
        mpz_class formula = lower_bound_formula(n, m, fam.d);
        bool all_distinct = mpz_class(static_cast<long>(dedup.size())) == formula &&
                            mpz_class(stats.emitted) == formula;
        Json payload{{"family", fam.name},
                     {"n", n},
                     {"m", m},
                     {"count", std::to_string(stats.emitted)},
                     {"distinct", std::to_string(dedup.size())},
                     {"formula_value", formula.get_str()},
                     {"all_distinct", all_distinct},
                     {"all_strong", all_strong},
                     {"perturbation_retries", stats.perturbation_retries},
                     {"warren", warren_bound(n, fam.d, fam.k(), fam.max_pred_degree()).get_str()},
                     {"seed_record", seed_to_json(seed, fam)}};
        if (!all_distinct || !all_strong)
            throw InvariantError("construct: emitted set failed distinctness/strength certification");
        emit(c, "construct", config, payload);
        return kOk;
    }
    if (app.got_subcommand("verify-family")) {
        require_seed(c);
        if (c.family.empty())
            throw ConfigError("verify-family needs a builtin --family (the oracle is geometric)");
        Family fam = load_family(c);
        BuiltinFamilyId id = BuiltinFamilyId::parse(c.family);
        BoxSpec box = parse_box(c.box, fam.d);
        long checked = 0, skipped = 0, mismatches = 0;
        for (long t = 0; checked < trials; ++t) {
            if (t > trials * 64)
                throw SearchExhausted("verify-family: too few strongly-nonzero samples");
            Rng rng = Rng::for_trial(c.seed, static_cast<uint64_t>(t));
            VecR a = random_point(fam, rng, box, c.bits);
            VecR b = random_point(fam, rng, box, c.bits);
            auto sig = sign_vector(fam, a, b);
            bool strong_pair = true;
            for (Sign s : sig) strong_pair = strong_pair && s != Sign::Zero;
            if (!strong_pair) {
                ++skipped;
                continue;
            }
            auto oracle = oracle_relation(id, a, b);
            if (!oracle) {
                ++skipped;
                continue;
            }
            ++checked;
            if (fam.lambda.name(fam.phi(sig)) != *oracle) ++mismatches;
        }
        Json payload{{"family", fam.name},
                     {"checked", checked},
                     {"skipped", skipped},
                     {"mismatches", mismatches}};
        emit(c, "verify-family", config, payload);
        if (mismatches > 0) throw InvariantError("verify-family: encoding disagrees with the oracle");
        return kOk;
    }
    if (app.got_subcommand("sep-check")) {
        require_seed(c);
        Family fam = load_family(c);
        Configuration cfg = load_points(points_file, fam.d);
        if (cfg.n() != 2) throw ConfigError("sep-check expects exactly two points");
        Rng rng(c.seed);
        auto cert = separation_witness(fam, cfg.points[0], cfg.points[1], rng,
                                       parse_box(c.box, fam.d), c.bits, budget);
        if (!cert) {
            std::cerr << "sep-check: no witness within budget (not a disproof)\n";
            return kExhausted;
        }
        Json payload{{"family", fam.name},
                     {"b", vec_to_json(cert->b)},
                     {"signs_a", PhiTable::sign_string(cert->sig_a)},
                     {"signs_a2", PhiTable::sign_string(cert->sig_a2)},
                     {"label_a", fam.lambda.name(cert->label_a)},
                     {"label_a2", fam.lambda.name(cert->label_a2)}};
        emit(c, "sep-check", config, payload);
        return kOk;
    }
    throw ConfigError("no subcommand given (try --help)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sign-condition edge-labelings: encode, count, bound, construct"};
    app.require_subcommand(0, 1);

    CommonOpts c;
    int n = 0, m = 0;
    long trials = 1000, budget = 4000, cap = 100000;
    bool strong = false;
    std::string points_file, seed_file, emit_file;

    auto add_common = [&](CLI::App* sub, bool needs_seed) {
        sub->add_option("--family", c.family, "builtin family name, e.g. disks, poset:2");
        sub->add_option("--spec", c.spec_file, "family spec file (JSON)");
        sub->add_option("--box", c.box, "sampling box 'lo:hi' or per-coordinate list");
        sub->add_option("--bits", c.bits, "dyadic sampling precision bits");
        sub->add_option("--out", c.out_dir, "run directory for manifest + payload");
        sub->add_option("--format", c.format, "json | human | csv");
        sub->add_option("--workers", c.workers, "worker threads (results are worker-independent)");
        if (needs_seed)
            sub->add_option("--seed", c.seed, "RNG seed (required)")->each([&](const std::string&) {
                c.seed_set = true;
            });
    };

    auto* s_label = app.add_subcommand("label", "label a configuration of points");
    add_common(s_label, false);
    s_label->add_option("--points", points_file, "points file (JSON)")->required();

    auto* s_count = app.add_subcommand("count", "Monte Carlo distinct-labeling count");
    add_common(s_count, true);
    s_count->add_option("--n", n, "number of points")->required();
    s_count->add_option("--trials", trials, "number of trials");
    s_count->add_option("--m", m, "also report the lower-bound formula for this m");
    s_count->add_flag("--strong", strong, "discard configurations that are not strongly nonzero");

    auto* s_export = app.add_subcommand("export-family",
                                        "emit a family's exact encoding as a spec file");
    add_common(s_export, false);

    auto* s_bound = app.add_subcommand("bound", "Warren-type upper bound");
    add_common(s_bound, false);
    s_bound->add_option("--n", n, "number of points")->required();

    auto* s_lower = app.add_subcommand("lower", "constructive lower-bound formula m^(d(n-dm))");
    add_common(s_lower, false);
    s_lower->add_option("--n", n)->required();
    s_lower->add_option("--m", m)->required();

    auto* s_construct = app.add_subcommand("construct", "emit the full labeling factory output");
    add_common(s_construct, true);
    s_construct->add_option("--n", n)->required();
    s_construct->add_option("--m", m)->required();
    s_construct->add_option("--seed-file", seed_file, "spanning seed record (JSON) to reuse");
    s_construct->add_option("--emit", emit_file, "write labelings as JSON lines to this file");
    s_construct->add_option("--budget", budget, "wall-pair search budget");
    s_construct->add_option("--cap", cap, "exhaustive tuple-verification cap");

    auto* s_wall = app.add_subcommand("wallpair", "find and certify a spanning seed");
    add_common(s_wall, true);
    s_wall->add_option("--budget", budget, "search budget");

    auto* s_verify = app.add_subcommand("verify-family", "encoding soundness vs geometric oracle");
    add_common(s_verify, true);
    s_verify->add_option("--trials", trials, "strongly-nonzero pairs to check");

    auto* s_sep = app.add_subcommand("sep-check", "separation witness for two points");
    add_common(s_sep, true);
    s_sep->add_option("--points", points_file, "points file with exactly two points")->required();
    s_sep->add_option("--budget", budget, "sampling budget");

    CLI11_PARSE(app, argc, argv);

    g_started = now_iso();
    try {
        return dispatch(app, c, n, m, trials, budget, strong, cap, points_file, seed_file,
                        emit_file);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const SearchExhausted& e) {
        std::cerr << "search exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const GridInvalid& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kInvariant;
    } catch (const InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvariant;
    }
}
