// Acceptance suite: one line per criterion, exit code = number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "siglab/construct.hpp"
#include "siglab/counting.hpp"
#include "siglab/serialize.hpp"

using namespace siglab;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                seconds, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int number, const std::string& what, const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        detail = body();  // empty string = pass
        ok = detail.empty();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(number, what, ok, detail, secs);
}

long soundness_mismatches(const std::string& name, long pairs, uint64_t seed, Rat lo, Rat hi,
                          int bits, long* out_checked) {
    BuiltinFamilyId id = BuiltinFamilyId::parse(name);
    Family fam = builtin(id);
    BoxSpec box = BoxSpec::uniform(fam.d, lo, hi);
    long checked = 0, mismatches = 0;
    for (long t = 0; checked < pairs && t < pairs * 64; ++t) {
        Rng rng = Rng::for_trial(seed, static_cast<uint64_t>(t));
        VecR a = random_point(fam, rng, box, bits);
        VecR b = random_point(fam, rng, box, bits);
        auto sig = sign_vector(fam, a, b);
        bool strong = true;
        for (Sign s : sig) strong = strong && s != Sign::Zero;
        if (!strong) continue;
        auto oracle = oracle_relation(id, a, b);
        if (!oracle) continue;
        ++checked;
        if (fam.lambda.name(fam.phi(sig)) != *oracle) ++mismatches;
    }
    *out_checked = checked;
    return mismatches;
}

SpanningSeed find_seed(const Family& fam, uint64_t seed_val) {
    Rng rng(seed_val);
    WallSearchOptions opts{BoxSpec::uniform(fam.d, Rat(-8), Rat(8)), 12, 6000};
    auto r = find_spanning_seed(fam, rng, opts);
    if (!r.seed) throw SearchExhausted("no spanning seed for " + fam.name + ": " + r.diagnostic);
    recertify(fam, *r.seed);
    return *r.seed;
}

std::string check_factory(const std::string& name, int n, int m, long expect) {
    Family fam = builtin(name);
    SpanningSeed seed = find_seed(fam, 2024);
    Rng rng(99);
    std::set<std::string> dedup;
    long emitted = 0;
    bool all_strong = true;
    generate_labelings(fam, seed, n, m, rng, [&](const EdgeLabeling& el, const Configuration& cfg) {
        ++emitted;
        dedup.insert(canonical_bytes(el));
        all_strong = all_strong && strong_check(fam, cfg);
    });
    std::ostringstream os;
    if (emitted != expect) os << name << ": emitted " << emitted << " != " << expect << "; ";
    if (static_cast<long>(dedup.size()) != expect)
        os << name << ": distinct " << dedup.size() << " != " << expect << "; ";
    if (!all_strong) os << name << ": a witness failed strong_check; ";
    mpz_class formula = lower_bound_formula(n, m, fam.d);
    if (formula != mpz_class(expect)) os << name << ": formula mismatch; ";
    mpz_class warren = warren_bound(n, fam.d, fam.k(), fam.max_pred_degree());
    if (formula > warren) os << name << ": lower bound exceeds the Warren bound; ";
    return os.str();
}

}  // namespace

int main() {
    run(1, "encoding soundness: 1e4 strongly-nonzero pairs per family agree with the oracle", [] {
        std::ostringstream os;
        struct Row {
            const char* name;
            long lo, hi;
            int bits;
        };
        for (const Row& row : std::initializer_list<Row>{{"disks", -4, 4, 10},
                                                         {"unit_disks", -4, 4, 10},
                                                         {"balls:3", -4, 4, 8},
                                                         {"intervals", -4, 4, 8},
                                                         {"segments", -4, 4, 8},
                                                         {"boxes:2", -4, 4, 8},
                                                         {"circle_orders", -4, 4, 8},
                                                         {"poset:1", -4, 4, 10},
                                                         {"poset:2", -4, 4, 10},
                                                         {"poset:3", -4, 4, 10}}) {
            long checked = 0;
            long bad = soundness_mismatches(row.name, 10000, 0xACCE5501, Rat(row.lo), Rat(row.hi),
                                            row.bits, &checked);
            if (bad != 0 || checked < 10000)
                os << row.name << ": " << bad << " mismatches in " << checked << " pairs; ";
        }
        return os.str();
    });

    run(2, "linking kernel: 1e3 conclusive circle pairs, symbolic q, worked pair", [] {
        std::ostringstream os;
        const auto& kern = LinkingKernel::instance();
        auto v = [](int i) { return Polynomial::variable(12, i); };
        Polynomial dd = v(3) - v(9), ee = v(4) - v(10), cross = v(3) * v(10) - v(9) * v(4);
        if (!(kern.q == dd * dd + ee * ee + cross * cross)) os << "q closed form mismatch; ";

        CircleSpec c{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
        CircleSpec linked{Rat(1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(1)};
        if (!linking_predicate(c, linked).link) os << "worked pair did not link; ";

        long checked = 0, bad = 0;
        for (long t = 0; checked < 1000 && t < 64000; ++t) {
            Rng rng = Rng::for_trial(0xACCE5502, static_cast<uint64_t>(t));
            auto mk = [&]() {
                CircleSpec s;
                s.a = rng.dyadic(Rat(-3), Rat(3), 8);
                s.b = rng.dyadic(Rat(-3), Rat(3), 8);
                s.c = rng.dyadic(Rat(-3), Rat(3), 8);
                s.d = rng.dyadic(Rat(-2), Rat(2), 8);
                s.e = rng.dyadic(Rat(-2), Rat(2), 8);
                s.r = rng.dyadic(Rat(1, 2), Rat(3), 8);
                return s;
            };
            CircleSpec c1 = mk(), c2 = mk();
            LinkTrace tr = linking_predicate(c1, c2);
            if (tr.degenerate) continue;
            auto oracle = gauss_linking_oracle(c1, c2);
            if (!oracle) continue;
            ++checked;
            if (tr.link != *oracle) ++bad;
        }
        if (bad != 0 || checked < 1000)
            os << bad << " disagreements in " << checked << " conclusive pairs; ";
        return os.str();
    });

    run(3, "grid construction: exhaustive tuple verification and recovery for m in {2,3}", [] {
        std::ostringstream os;
        for (const char* name : {"poset:1", "poset:2", "unit_disks", "disks"}) {
            Family fam = builtin(name);
            SpanningSeed seed = find_seed(fam, 2024);
            for (int m : {2, 3}) {
                Grid grid = build_grid_verified(fam, seed, m);
                VerifyReport rep = verify_grid(fam, grid);
                if (!rep.exhaustive || !rep.ok()) {
                    os << name << " m=" << m << ": " << rep.failures.size() << " failures of "
                       << rep.checked << "; ";
                }
            }
        }
        return os.str();
    });

    run(4, "labeling factory: exact counts 16 / 4096 / 4096, distinct and strong", [] {
        std::ostringstream os;
        os << check_factory("poset:1", 6, 2, 16);
        os << check_factory("poset:2", 10, 2, 4096);
        os << check_factory("disks", 10, 2, 4096);
        return os.str();
    });

    run(5, "bounds consistency: exact Warren values dominate factory and sample counts", [] {
        std::ostringstream os;
        if (warren_bound(2, 3, 1, 2) != mpz_class("12230590464")) os << "warren(2,3,1,2) wrong; ";
        struct Row {
            const char* name;
            int n, m;
        };
        for (const Row& r : std::initializer_list<Row>{{"poset:1", 6, 2}, {"poset:2", 10, 2},
                                                       {"disks", 10, 2}}) {
            Family fam = builtin(r.name);
            if (lower_bound_formula(r.n, r.m, fam.d) >
                warren_bound(r.n, fam.d, fam.k(), fam.max_pred_degree()))
                os << r.name << ": lower > warren; ";
        }
        Family disks = builtin("disks");
        SampleOptions opts;
        opts.box = BoxSpec::uniform(3, Rat(-4), Rat(4));
        opts.bits = 8;
        CountReport rep = sample_count(disks, 4, 2000, 0xACCE5505, opts);
        if (!rep.warren || mpz_class(rep.distinct_count) > *rep.warren)
            os << "sample count not dominated by the Warren bound; ";
        return os.str();
    });

    run(6, "brute-force oracle agreement: 13 / 6 / 3 / 8 and saturated sampling matches", [] {
        std::ostringstream os;
        auto expect = [&](mpz_class got, long want, const char* what) {
            if (got != mpz_class(want)) os << what << ": " << got.get_str() << " != " << want << "; ";
        };
        expect(brute_force_count_1d(BuiltinFamilyId::parse("poset:1"), 3, true), 13,
               "poset:1 n=3 ties");
        expect(brute_force_count_1d(BuiltinFamilyId::parse("poset:1"), 3, false), 6,
               "poset:1 n=3 strong");
        expect(brute_force_count_1d(BuiltinFamilyId::parse("poset:1"), 2, true), 3, "poset:1 n=2");
        expect(brute_force_count_1d(BuiltinFamilyId::parse("intervals"), 3, true), 8,
               "intervals n=3");

        Family poset1 = builtin("poset:1");
        SampleOptions coarse;
        coarse.box = BoxSpec::uniform(1, Rat(0), Rat(1));
        coarse.bits = 2;
        CountReport ties = sample_count(poset1, 3, 6000, 0xACCE5506, coarse);
        if (!ties.saturated || ties.distinct_count != 13)
            os << "sampled poset:1 ties " << ties.distinct_count << "; ";
        coarse.strong_only = true;
        CountReport strong = sample_count(poset1, 3, 6000, 0xACCE5507, coarse);
        if (!strong.saturated || strong.distinct_count != 6)
            os << "sampled poset:1 strong " << strong.distinct_count << "; ";
        coarse.strong_only = false;
        CountReport two = sample_count(poset1, 2, 4000, 0xACCE5508, coarse);
        if (!two.saturated || two.distinct_count != 3)
            os << "sampled poset:1 n=2 " << two.distinct_count << "; ";
        Family intervals = builtin("intervals");
        SampleOptions icoarse;
        icoarse.box = BoxSpec::uniform(2, Rat(0), Rat(1));
        icoarse.bits = 3;  // the empty graph needs six strictly increasing endpoints
        CountReport iv = sample_count(intervals, 3, 20000, 0xACCE5509, icoarse);
        if (!iv.saturated || iv.distinct_count != 8)
            os << "sampled intervals " << iv.distinct_count << "; ";
        return os.str();
    });

    run(7, "numerical hygiene: finite differences and positive-rescaling invariance", [] {
        std::ostringstream os;
        Rng rng(0xACCE550A);
        long bad_fd = 0;
        for (int it = 0; it < 1000; ++it) {
            int d = static_cast<int>(rng.range(1, 3));
            Polynomial p(2 * d);
            for (int t = 0; t < 6; ++t) {
                ExpVec e(static_cast<size_t>(2 * d), 0);
                int deg = static_cast<int>(rng.below(5));
                for (int b = 0; b < deg; ++b)
                    ++e[static_cast<size_t>(rng.below(static_cast<uint64_t>(2 * d)))];
                p.add_term(e, Rat(rng.range(-30, 30), rng.range(1, 9)));
            }
            if (p.is_zero()) continue;
            VecR x(2 * d);
            for (int i = 0; i < 2 * d; ++i) x[i] = rng.dyadic(Rat(-2), Rat(2), 8);
            auto [ga, gb] = gradient_split(p, x.head(d), x.tail(d));
            std::vector<double> xd(static_cast<size_t>(2 * d));
            for (int i = 0; i < 2 * d; ++i) xd[static_cast<size_t>(i)] = x[i].to_double();
            const double h = 1e-5;
            for (int i = 0; i < 2 * d; ++i) {
                auto hi = xd, lo = xd;
                hi[static_cast<size_t>(i)] += h;
                lo[static_cast<size_t>(i)] -= h;
                double fd = (p.eval_double(hi) - p.eval_double(lo)) / (2 * h);
                double exact = (i < d ? ga[i] : gb[i - d]).to_double();
                double scale = std::max({1.0, std::abs(exact), std::abs(fd)});
                if (std::abs(fd - exact) / scale > 1e-6) ++bad_fd;
            }
        }
        if (bad_fd) os << bad_fd << " finite-difference mismatches; ";

        Family disks = builtin("disks");
        BoxSpec box = BoxSpec::uniform(3, Rat(-4), Rat(4));
        long bad_scale = 0;
        for (long t = 0; t < 1000; ++t) {
            Rng trial = Rng::for_trial(0xACCE550B, static_cast<uint64_t>(t));
            Family scaled = disks;
            Rat c(trial.range(1, 60), trial.range(1, 12));
            for (auto& p : scaled.preds) p = c * p;
            Configuration cfg;
            for (int i = 0; i < 4; ++i) cfg.points.push_back(random_point(disks, trial, box, 8));
            if (canonical_bytes(label_configuration(disks, cfg)) !=
                canonical_bytes(label_configuration(scaled, cfg)))
                ++bad_scale;
        }
        if (bad_scale) os << bad_scale << " rescaling divergences; ";
        return os.str();
    });

    run(8, "reproducibility: identical payloads across worker counts and reruns", [] {
        std::ostringstream os;
        Family poset2 = builtin("poset:2");
        SampleOptions o1;
        o1.box = BoxSpec::uniform(2, Rat(0), Rat(1));
        o1.bits = 3;
        SampleOptions o4 = o1;
        o1.workers = 1;
        o4.workers = 4;
        std::string p1 = count_report_to_json(sample_count(poset2, 5, 4000, 0xACCE550C, o1)).dump();
        std::string p4 = count_report_to_json(sample_count(poset2, 5, 4000, 0xACCE550C, o4)).dump();
        if (p1 != p4) os << "count payload differs across worker counts; ";

        Family poset1 = builtin("poset:1");
        auto run_once = [&]() {
            SpanningSeed seed = find_seed(poset1, 7);
            Rng rng(7);
            std::ostringstream payload;
            generate_labelings(poset1, seed, 6, 2, rng,
                               [&](const EdgeLabeling& el, const Configuration&) {
                                   payload << labeling_to_json(el, poset1.lambda).dump() << "\n";
                               });
            return payload.str();
        };
        if (run_once() != run_once()) os << "construct payload differs across reruns; ";
        return os.str();
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "RESULT", failures);
    return failures;
}
