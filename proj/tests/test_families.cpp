#include <doctest.h>

#include "siglab/builtins.hpp"
#include "siglab/serialize.hpp"

using namespace siglab;

namespace {

/// Draws strongly-nonzero pairs and compares the sign-condition label with
/// the geometric oracle; returns the number of mismatches.
long soundness_mismatches(const std::string& name, long pairs, uint64_t seed,
                          const BoxSpec& box, int bits) {
    BuiltinFamilyId id = BuiltinFamilyId::parse(name);
    Family fam = builtin(id);
    long checked = 0, mismatches = 0;
    for (long t = 0; checked < pairs; ++t) {
        REQUIRE(t < pairs * 64);
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
    return mismatches;
}

VecR seg(long alpha, long beta, long gamma, long delta) {
    return vec_from({Rat(alpha), Rat(beta), Rat(gamma), Rat(delta)});
}

}  // namespace

TEST_SUITE_BEGIN("families");

TEST_CASE("builtin catalogue matches the stated shapes") {
    Family disks = builtin("disks");
    CHECK(disks.d == 3);
    CHECK(disks.k() == 1);
    CHECK(disks.lambda.name(disks.phi({Sign::Minus})) == "edge");
    CHECK(disks.lambda.name(disks.phi({Sign::Plus})) == "non-edge");
    CHECK(disks.lambda.name(disks.phi({Sign::Zero})) == "non-edge");

    Family poset2 = builtin("poset:2");
    CHECK(poset2.d == 2);
    CHECK(poset2.k() == 2);
    CHECK(poset2.lambda.name(poset2.phi({Sign::Plus, Sign::Plus})) == "prec");
    CHECK(poset2.lambda.name(poset2.phi({Sign::Plus, Sign::Zero})) == "prec");
    CHECK(poset2.lambda.name(poset2.phi({Sign::Zero, Sign::Zero})) == "incomparable");
    CHECK(poset2.lambda.name(poset2.phi({Sign::Plus, Sign::Minus})) == "incomparable");

    Family co = builtin("circle_orders");
    CHECK(co.lambda.size() == 3);
    CHECK(co.k() == 2);
    CHECK(co.d == 3);

    CHECK(builtin("balls:3").d == 4);
    CHECK(builtin("unit_balls:3").d == 3);
    CHECK(builtin("segments").d == 4);
    CHECK(builtin("boxes:2").d == 4);
    CHECK(builtin("circle_links").d == 6);
    CHECK(builtin("unit_circle_links").d == 5);
    CHECK_THROWS_AS(builtin("balls"), ConfigError);
    CHECK_THROWS_AS(builtin("frisbees"), ConfigError);
}

TEST_CASE("encoding soundness against geometric oracles (smoke scale)") {
    BoxSpec b3 = BoxSpec::uniform(3, Rat(-4), Rat(4));
    CHECK(soundness_mismatches("disks", 500, 21, b3, 8) == 0);
    CHECK(soundness_mismatches("unit_disks", 500, 22, BoxSpec::uniform(2, Rat(-4), Rat(4)), 8) == 0);
    CHECK(soundness_mismatches("balls:3", 400, 23, BoxSpec::uniform(4, Rat(-4), Rat(4)), 8) == 0);
    CHECK(soundness_mismatches("intervals", 500, 24, BoxSpec::uniform(2, Rat(-4), Rat(4)), 6) == 0);
    CHECK(soundness_mismatches("segments", 500, 25, BoxSpec::uniform(4, Rat(-4), Rat(4)), 6) == 0);
    CHECK(soundness_mismatches("boxes:2", 400, 26, BoxSpec::uniform(4, Rat(-4), Rat(4)), 6) == 0);
    CHECK(soundness_mismatches("circle_orders", 500, 27, b3, 8) == 0);
    CHECK(soundness_mismatches("poset:2", 500, 28, BoxSpec::uniform(2, Rat(-4), Rat(4)), 6) == 0);
    CHECK(soundness_mismatches("ball_orders:3", 400, 29, BoxSpec::uniform(4, Rat(-4), Rat(4)), 8) == 0);
    CHECK(soundness_mismatches("unit_balls:3", 400, 30, BoxSpec::uniform(3, Rat(-4), Rat(4)), 8) == 0);
}

TEST_CASE("segment encoding covers all three intersection cases") {
    Family fam = builtin("segments");
    auto is_edge = [&](const VecR& a, const VecR& b) {
        return fam.lambda.name(pair_label(fam, a, b)) == "edge";
    };
    // slopes differ, crossing inside both x-ranges
    CHECK(is_edge(seg(1, 0, -1, 1), seg(-1, 0, -1, 1)));
    // slopes differ, crossing outside the x-range
    CHECK_FALSE(is_edge(seg(1, 0, 2, 3), seg(-1, 0, 2, 3)));
    // parallel, different intercepts
    CHECK_FALSE(is_edge(seg(1, 0, 0, 1), seg(1, 1, 0, 1)));
    // collinear overlapping on y = x
    CHECK(is_edge(seg(1, 0, 0, 2), seg(1, 0, 1, 3)));
    // collinear, disjoint ranges
    CHECK_FALSE(is_edge(seg(1, 0, 0, 1), seg(1, 0, 2, 3)));
    // collinear touching at one endpoint
    CHECK(is_edge(seg(1, 0, 0, 1), seg(1, 0, 1, 3)));
    // boundary: crossing exactly at an endpoint
    CHECK(is_edge(seg(1, 0, -1, 0), seg(-1, 0, 0, 1)));
}

TEST_CASE("circle order labels are antisymmetric on strong pairs") {
    Family co = builtin("circle_orders");
    Rng rng(31);
    BoxSpec box = BoxSpec::uniform(3, Rat(-4), Rat(4));
    long checked = 0;
    for (long t = 0; checked < 300; ++t) {
        REQUIRE(t < 30000);
        VecR a = random_point(co, rng, box, 8);
        VecR b = random_point(co, rng, box, 8);
        auto sab = sign_vector(co, a, b);
        auto sba = sign_vector(co, b, a);
        bool strong = true;
        for (Sign s : sab) strong = strong && s != Sign::Zero;
        for (Sign s : sba) strong = strong && s != Sign::Zero;
        if (!strong) continue;
        ++checked;
        std::string lab = co.lambda.name(co.phi(sab));
        std::string rev = co.lambda.name(co.phi(sba));
        if (lab == "prec") CHECK(rev == "succ");
        if (lab == "succ") CHECK(rev == "prec");
        if (lab == "incomparable") CHECK(rev == "incomparable");
    }
}

TEST_CASE("random_point respects the domain and can exhaust") {
    Family segs = builtin("segments");
    Rng rng(32);
    // gamma range above delta range leaves the domain empty
    BoxSpec bad;
    bad.coords = {{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}, {Rat(5), Rat(6)}, {Rat(0), Rat(1)}};
    CHECK_THROWS_AS(random_point(segs, rng, bad, 8), SearchExhausted);

    Family poset2 = builtin("poset:2");
    for (int i = 0; i < 20; ++i)
        CHECK(membership(poset2.domain, random_point(poset2, rng, BoxSpec::uniform(2, Rat(0), Rat(1)), 4)));
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("linking");

TEST_CASE("q matches its closed form symbolically") {
    const auto& k = LinkingKernel::instance();
    const int nv = 12;
    auto v = [&](int i) { return Polynomial::variable(nv, i); }; // (a,b,c,d,e,r,a',b',c',d',e',r')
    Polynomial dd = v(3) - v(9);
    Polynomial ee = v(4) - v(10);
    Polynomial cross = v(3) * v(10) - v(9) * v(4);
    CHECK(k.q == dd * dd + ee * ee + cross * cross);
}

TEST_CASE("worked linked pair and easy non-links") {
    CircleSpec c{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
    CircleSpec linked{Rat(1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(1)};
    CircleSpec far{Rat(100), Rat(0), Rat(0), Rat(0), Rat(1), Rat(1)};
    CircleSpec parallel{Rat(0), Rat(0), Rat(5), Rat(0), Rat(0), Rat(1)};

    CHECK(linking_predicate(c, linked).link);
    CHECK_FALSE(linking_predicate(c, far).link);
    CHECK_FALSE(linking_predicate(c, parallel).link);

    CHECK(*gauss_linking_oracle(c, linked));
    CHECK_FALSE(*gauss_linking_oracle(c, far));
}

TEST_CASE("linking decision is symmetric and matches the oracle (smoke scale)") {
    Rng rng(41);
    long checked = 0;
    for (long t = 0; checked < 60; ++t) {
        REQUIRE(t < 4000);
        Rng trial = Rng::for_trial(41, static_cast<uint64_t>(t));
        auto mk = [&]() {
            CircleSpec s;
            s.a = trial.dyadic(Rat(-3), Rat(3), 6);
            s.b = trial.dyadic(Rat(-3), Rat(3), 6);
            s.c = trial.dyadic(Rat(-3), Rat(3), 6);
            s.d = trial.dyadic(Rat(-2), Rat(2), 6);
            s.e = trial.dyadic(Rat(-2), Rat(2), 6);
            s.r = trial.dyadic(Rat(1, 4), Rat(3), 6);
            return s;
        };
        CircleSpec c1 = mk(), c2 = mk();
        LinkTrace tr = linking_predicate(c1, c2);
        if (tr.degenerate) continue;
        auto oracle = gauss_linking_oracle(c1, c2);
        if (!oracle) continue;
        ++checked;
        CHECK(tr.link == *oracle);
        CHECK(linking_predicate(c2, c1).link == tr.link);
    }
}

TEST_CASE("expanded final predicate agrees with composed evaluation") {
    const auto& k = LinkingKernel::instance();
    const Family links = builtin("circle_links");
    Rng rng(42);
    for (int it = 0; it < 12; ++it) {
        VecR pt(12);
        for (int i = 0; i < 12; ++i) pt[i] = rng.dyadic(Rat(-2), Rat(2), 5);
        Rat qv = k.q.eval(pt), gv = k.g.eval(pt), Gv = k.big_g.eval(pt), Kv = k.big_k.eval(pt);
        Rat composed = qv * qv * (Rat(4) * gv * Gv * Gv - Kv * Kv);
        CHECK(links.preds[3].eval(pt) == composed);
        CHECK(k.pred4.eval(pt) == composed);
    }
}

TEST_CASE("unit circle links substitute the radii by one") {
    Family unit = builtin("unit_circle_links");
    Family full = builtin("circle_links");
    Rng rng(43);
    for (int it = 0; it < 10; ++it) {
        VecR u(10);
        for (int i = 0; i < 10; ++i) u[i] = rng.dyadic(Rat(-2), Rat(2), 5);
        VecR v(12);
        for (int i = 0; i < 5; ++i) v[i] = u[i];
        v[5] = Rat(1);
        for (int i = 0; i < 5; ++i) v[6 + i] = u[5 + i];
        v[11] = Rat(1);
        for (int s = 0; s < 4; ++s)
            CHECK(unit.preds[static_cast<size_t>(s)].eval(u) ==
                  full.preds[static_cast<size_t>(s)].eval(v));
    }
}

TEST_SUITE_END();
