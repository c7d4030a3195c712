#include <doctest.h>

#include <cmath>

#include "siglab/builtins.hpp"
#include "siglab/rng.hpp"
#include "siglab/serialize.hpp"

using namespace siglab;

namespace {

Polynomial random_poly(Rng& rng, int nv, int max_deg, int terms) {
    Polynomial p(nv);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(static_cast<size_t>(nv), 0);
        int budget = static_cast<int>(rng.below(static_cast<uint64_t>(max_deg + 1)));
        for (int b = 0; b < budget; ++b)
            ++e[static_cast<size_t>(rng.below(static_cast<uint64_t>(nv)))];
        long num = rng.range(-40, 40);
        long den = rng.range(1, 12);
        p.add_term(e, Rat(num, den));
    }
    return p;
}

VecR random_point_vec(Rng& rng, int nv) {
    VecR v(nv);
    for (int i = 0; i < nv; ++i) v[i] = rng.dyadic(Rat(-3), Rat(3), 8);
    return v;
}

Polynomial disk_poly() { return builtin("disks").preds[0]; }

}  // namespace

TEST_SUITE_BEGIN("poly");

TEST_CASE("eval matches the worked examples") {
    // diagonal of y1 - x1
    Polynomial p(2);
    p.add_term({0, 1}, Rat(1));
    p.add_term({1, 0}, Rat(-1));
    CHECK(p.eval(vec_from({Rat(0), Rat(0)})) == Rat(0));

    // disk polynomial at (0,0,1, 3,0,1): 9 - 4 = 5
    CHECK(disk_poly().eval(vec_from({Rat(0), Rat(0), Rat(1), Rat(3), Rat(0), Rat(1)})) == Rat(5));

    Polynomial zero(4);
    CHECK(zero.eval(vec_from({Rat(1), Rat(2), Rat(3), Rat(4)})) == Rat(0));
    CHECK(zero.is_zero());
    CHECK(zero.degree() == -1);
}

TEST_CASE("sign extraction") {
    CHECK(sign_of(Rat(5)) == Sign::Plus);
    CHECK(sign_of(Rat(-1, 3)) == Sign::Minus);
    CHECK(sign_of(Rat(0)) == Sign::Zero);
}

TEST_CASE("gradient_split on worked examples") {
    Polynomial p(2);  // y1 - x1
    p.add_term({0, 1}, Rat(1));
    p.add_term({1, 0}, Rat(-1));
    auto [ga, gb] = gradient_split(p, vec_from({Rat(2)}), vec_from({Rat(7)}));
    CHECK(ga[0] == Rat(-1));
    CHECK(gb[0] == Rat(1));

    auto [da, db] =
        gradient_split(disk_poly(), vec_from({Rat(0), Rat(0), Rat(1)}), vec_from({Rat(2), Rat(0), Rat(1)}));
    CHECK(vec_equal(da, vec_from({Rat(-4), Rat(0), Rat(-4)})));
    CHECK(vec_equal(db, vec_from({Rat(4), Rat(0), Rat(-4)})));

    Polynomial c = Polynomial::constant(4, Rat(9));
    auto [ca, cb] = gradient_split(c, vec_from({Rat(1), Rat(2)}), vec_from({Rat(3), Rat(4)}));
    CHECK(vec_equal(ca, VecR::Zero(2)));
    CHECK(vec_equal(cb, VecR::Zero(2)));
}

TEST_CASE("evaluation is a ring homomorphism") {
    Rng rng(101);
    for (int it = 0; it < 200; ++it) {
        int nv = static_cast<int>(rng.range(1, 4));
        Polynomial p = random_poly(rng, nv, 3, 5);
        Polynomial q = random_poly(rng, nv, 3, 5);
        VecR x = random_point_vec(rng, nv);
        CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
        CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
    }
}

TEST_CASE("scaling a polynomial scales signs predictably") {
    Rng rng(102);
    for (int it = 0; it < 200; ++it) {
        int nv = static_cast<int>(rng.range(1, 4));
        Polynomial p = random_poly(rng, nv, 4, 6);
        VecR x = random_point_vec(rng, nv);
        Rat c(rng.range(1, 50), rng.range(1, 9));
        CHECK(sign_of((c * p).eval(x)) == sign_of(p.eval(x)));
        CHECK(sign_of((-c * p).eval(x)) == flip(sign_of(p.eval(x))));
    }
}

TEST_CASE("gradients agree with central finite differences") {
    Rng rng(103);
    int bad = 0;
    for (int it = 0; it < 1000; ++it) {
        int nv = 2 * static_cast<int>(rng.range(1, 3));
        Polynomial p = random_poly(rng, nv, 4, 7);
        VecR x = random_point_vec(rng, nv);
        int d = nv / 2;
        auto [ga, gb] = gradient_split(p, x.head(d), x.tail(d));
        const double h = 1e-5;
        std::vector<double> xd(static_cast<size_t>(nv));
        for (int i = 0; i < nv; ++i) xd[static_cast<size_t>(i)] = x[i].to_double();
        for (int i = 0; i < nv; ++i) {
            std::vector<double> hi = xd, lo = xd;
            hi[static_cast<size_t>(i)] += h;
            lo[static_cast<size_t>(i)] -= h;
            double fd = (p.eval_double(hi) - p.eval_double(lo)) / (2 * h);
            double exact = (i < d ? ga[i] : gb[i - d]).to_double();
            double scale = std::max({1.0, std::abs(exact), std::abs(fd)});
            if (std::abs(fd - exact) / scale > 1e-6) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("serialization round trip is bit exact") {
    Rng rng(104);
    for (int it = 0; it < 100; ++it) {
        int nv = static_cast<int>(rng.range(1, 6));
        Polynomial p = random_poly(rng, nv, 5, 8);
        Polynomial back = polynomial_from_json(polynomial_to_json(p), nv);
        CHECK(p == back);
    }
    Rat r(-7, 12);
    CHECK(Rat::parse(r.str()) == r);
    CHECK(Rat::parse("3/6") == Rat(1, 2));
    CHECK_THROWS(Rat::parse("1.5"));
    CHECK_THROWS(Rat::parse("2/0"));
}

TEST_CASE("line restriction recovers exact univariate coefficients") {
    // disk polynomial along the isotropic direction (x', r') is linear in t
    Polynomial p = disk_poly();
    VecR base = vec_from({Rat(0), Rat(0), Rat(1), Rat(5), Rat(1), Rat(2)});
    VecR dir = vec_from({Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(1)});
    auto coeffs = restrict_to_line(p, base, dir);
    REQUIRE(coeffs.size() == 2);  // quadratic terms cancel along this direction
    // P(base) = 25 + 1 - 9 = 17; slope = 2(x'-x) - 2(r+r') = 10 - 6 = 4
    CHECK(coeffs[0] == Rat(17));
    CHECK(coeffs[1] == Rat(4));
}

TEST_SUITE_END();
