#include "siglab/builtins.hpp"

#include <algorithm>

#include "siglab/errors.hpp"

namespace siglab {

namespace {

Polynomial var(int nv, int i) { return Polynomial::variable(nv, i); }

Polynomial cst(int nv, long c) { return Polynomial::constant(nv, Rat(c)); }

bool in_set(Sign s, std::initializer_list<Sign> set) {
    return std::find(set.begin(), set.end(), s) != set.end();
}

/// Squared-distance intersection predicate for balls: sum (x_i - y_i)^2 - rhs,
/// with rhs = (r + r')^2 when with_radius, else the constant 4 (unit radius).
Family make_balls(const std::string& name, int m, bool with_radius) {
    int d = with_radius ? m + 1 : m;
    int nv = 2 * d;
    Polynomial p(nv);
    for (int i = 0; i < m; ++i) {
        Polynomial diff = var(nv, i) - var(nv, d + i);
        p += diff * diff;
    }
    if (with_radius) {
        Polynomial rsum = var(nv, m) + var(nv, d + m);
        p -= rsum * rsum;
    } else {
        p -= cst(nv, 4);
    }

    Family fam;
    fam.name = name;
    fam.d = d;
    fam.lambda = LabelSet({"edge", "non-edge"});
    fam.preds = {p};
    fam.phi = PhiTable::from_function(
        1, [&](const std::vector<Sign>& s) { return s[0] == Sign::Minus ? 0 : 1; });
    if (with_radius) {
        fam.domain.d = d;
        fam.domain.polys = {Polynomial::variable(d, m)};  // r > 0
        fam.domain.accept = {"+"};
    } else {
        fam.domain = DomainSpec::whole_space(d);
    }
    fam.validate();
    return fam;
}

/// Per-axis closed-overlap predicates for boxes; coordinates are
/// (l_1, h_1, ..., l_m, h_m).
Family make_boxes(const std::string& name, int m) {
    int d = 2 * m;
    int nv = 2 * d;
    std::vector<Polynomial> preds;
    for (int i = 0; i < m; ++i) {
        preds.push_back(var(nv, d + 2 * i + 1) - var(nv, 2 * i));  // h'_i - l_i
        preds.push_back(var(nv, 2 * i + 1) - var(nv, d + 2 * i));  // h_i - l'_i
    }
    Family fam;
    fam.name = name;
    fam.d = d;
    fam.lambda = LabelSet({"edge", "non-edge"});
    fam.preds = std::move(preds);
    fam.phi = PhiTable::from_function(2 * m, [&](const std::vector<Sign>& s) {
        for (Sign x : s)
            if (x == Sign::Minus) return 1;
        return 0;  // all overlaps hold (boundary touching counts)
    });
    fam.domain.d = d;
    std::string accept;
    for (int i = 0; i < m; ++i) {
        fam.domain.polys.push_back(Polynomial::variable(d, 2 * i + 1) -
                                   Polynomial::variable(d, 2 * i));  // h_i - l_i > 0
        accept.push_back('+');
    }
    fam.domain.accept = {accept};
    fam.validate();
    return fam;
}

/// Segment encoding over (alpha, beta, gamma, delta); see the family notes in
/// the shipped spec files for the case analysis behind the eight predicates.
Family make_segments() {
    const int d = 4, nv = 8;
    auto A = var(nv, 0), B = var(nv, 1), G = var(nv, 2), D = var(nv, 3);
    auto A2 = var(nv, 4), B2 = var(nv, 5), G2 = var(nv, 6), D2 = var(nv, 7);
    Polynomial dA = A - A2;       // alpha - alpha'
    Polynomial dB = B2 - B;       // beta' - beta
    std::vector<Polynomial> preds{
        dA,            // P1: alpha - alpha'
        B - B2,        // P2: beta - beta'
        dB - G * dA,   // P3
        dB - G2 * dA,  // P4
        dB - D * dA,   // P5
        dB - D2 * dA,  // P6
        D2 - G,        // P7
        D - G2,        // P8
    };
    Family fam;
    fam.name = "segments";
    fam.d = d;
    fam.lambda = LabelSet({"edge", "non-edge"});
    fam.preds = std::move(preds);
    fam.phi = PhiTable::from_function(8, [&](const std::vector<Sign>& s) {
        // For alpha > alpha': max(g,g')*(a-a') <= b'-b <= min(d,d')*(a-a')
        // splits into the four product comparisons P3..P6.
        bool edge;
        if (s[0] == Sign::Plus) {
            edge = in_set(s[2], {Sign::Plus, Sign::Zero}) && in_set(s[3], {Sign::Plus, Sign::Zero}) &&
                   in_set(s[4], {Sign::Minus, Sign::Zero}) && in_set(s[5], {Sign::Minus, Sign::Zero});
        } else if (s[0] == Sign::Minus) {
            edge = in_set(s[2], {Sign::Minus, Sign::Zero}) && in_set(s[3], {Sign::Minus, Sign::Zero}) &&
                   in_set(s[4], {Sign::Plus, Sign::Zero}) && in_set(s[5], {Sign::Plus, Sign::Zero});
        } else {
            // parallel: need beta = beta' and max(g,g') <= min(d,d')
            edge = s[1] == Sign::Zero && in_set(s[6], {Sign::Plus, Sign::Zero}) &&
                   in_set(s[7], {Sign::Plus, Sign::Zero});
        }
        return edge ? 0 : 1;
    });
    fam.domain.d = d;
    fam.domain.polys = {Polynomial::variable(d, 3) - Polynomial::variable(d, 2)};  // delta - gamma > 0
    fam.domain.accept = {"+"};
    fam.validate();
    return fam;
}

/// Containment order of closed balls: P1 = (r-r')^2 - sum (x_i-x'_i)^2,
/// P2 = r - r'.
Family make_ball_orders(const std::string& name, int m) {
    int d = m + 1, nv = 2 * d;
    Polynomial rdiff = var(nv, m) - var(nv, d + m);
    Polynomial p1 = rdiff * rdiff;
    for (int i = 0; i < m; ++i) {
        Polynomial diff = var(nv, i) - var(nv, d + i);
        p1 -= diff * diff;
    }
    Family fam;
    fam.name = name;
    fam.d = d;
    fam.lambda = LabelSet({"prec", "succ", "incomparable"});
    fam.preds = {p1, rdiff};
    fam.phi = PhiTable::from_function(2, [&](const std::vector<Sign>& s) {
        if (s[0] == Sign::Minus) return 2;
        if (s[1] == Sign::Minus) return 0;  // smaller radius, inside: prec
        if (s[1] == Sign::Plus) return 1;
        return 2;  // (+,0) and (0,0) are unreachable for distinct points in U
    });
    fam.domain.d = d;
    fam.domain.polys = {Polynomial::variable(d, m)};
    fam.domain.accept = {"+"};
    fam.validate();
    return fam;
}

Family make_poset(int dd) {
    int nv = 2 * dd;
    std::vector<Polynomial> preds;
    for (int s = 0; s < dd; ++s) preds.push_back(var(nv, dd + s) - var(nv, s));  // y_s - x_s
    Family fam;
    fam.name = "poset:" + std::to_string(dd);
    fam.d = dd;
    fam.lambda = LabelSet({"prec", "succ", "incomparable"});
    fam.preds = std::move(preds);
    fam.phi = PhiTable::from_function(dd, [&](const std::vector<Sign>& s) {
        bool any_plus = false, any_minus = false;
        for (Sign x : s) {
            any_plus = any_plus || x == Sign::Plus;
            any_minus = any_minus || x == Sign::Minus;
        }
        if (any_plus && !any_minus) return 0;   // nonzero tuple in {+,0}^d
        if (any_minus && !any_plus) return 1;   // nonzero tuple in {-,0}^d
        return 2;
    });
    fam.domain = DomainSpec::whole_space(dd);
    fam.validate();
    return fam;
}

Family make_circle_links(bool unit) {
    const LinkingKernel& kern = LinkingKernel::instance();
    std::vector<Polynomial> preds{kern.d_diff, kern.e_diff, kern.p4, kern.pred4};
    int d = 6;
    if (unit) {
        // Replace the radii r and r' by 1; the remaining 10 coordinates are
        // (a,b,c,d,e) per circle.
        d = 5;
        std::vector<int> keep{0, 1, 2, 3, 4, 6, 7, 8, 9, 10};
        for (auto& p : preds)
            p = p.substitute_value(5, Rat(1)).substitute_value(11, Rat(1)).select_vars(keep);
    }
    Family fam;
    fam.name = unit ? "unit_circle_links" : "circle_links";
    fam.d = d;
    fam.lambda = LabelSet({"link", "no-link"});
    fam.preds = std::move(preds);
    fam.phi = PhiTable::from_function(4, [&](const std::vector<Sign>& s) {
        if (s[0] == Sign::Zero && s[1] == Sign::Zero) return 1;  // parallel planes
        if (s[2] != Sign::Plus) return 1;  // intersection line misses or touches C
        return s[3] == Sign::Plus ? 0 : 1;
    });
    if (unit) {
        fam.domain = DomainSpec::whole_space(5);
    } else {
        fam.domain.d = 6;
        fam.domain.polys = {Polynomial::variable(6, 5)};  // r > 0
        fam.domain.accept = {"+"};
    }
    fam.validate();
    return fam;
}

}  // namespace

BuiltinFamilyId BuiltinFamilyId::parse(const std::string& name) {
    auto colon = name.find(':');
    std::string head = name.substr(0, colon);
    int param = 0;
    if (colon != std::string::npos) {
        try {
            param = std::stoi(name.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad family parameter in '" + name + "'");
        }
        if (param < 1) throw ConfigError("family parameter must be >= 1 in '" + name + "'");
    }
    using K = Kind;
    auto need_param = [&](K k) {
        if (colon == std::string::npos)
            throw ConfigError("family '" + head + "' needs a parameter, e.g. '" + head + ":2'");
        return BuiltinFamilyId{k, param};
    };
    if (head == "disks") return {K::Disks, 0};
    if (head == "unit_disks") return {K::UnitDisks, 0};
    if (head == "balls") return need_param(K::Balls);
    if (head == "unit_balls") return need_param(K::UnitBalls);
    if (head == "intervals") return {K::Intervals, 0};
    if (head == "segments") return {K::Segments, 0};
    if (head == "boxes") return need_param(K::Boxes);
    if (head == "circle_links") return {K::CircleLinks, 0};
    if (head == "unit_circle_links") return {K::UnitCircleLinks, 0};
    if (head == "ball_orders") return need_param(K::BallOrders);
    if (head == "circle_orders") return {K::CircleOrders, 0};
    if (head == "poset") return need_param(K::PosetDim);
    throw ConfigError("unknown builtin family '" + name + "'");
}

std::string BuiltinFamilyId::name() const {
    using K = Kind;
    switch (kind) {
        case K::Disks: return "disks";
        case K::UnitDisks: return "unit_disks";
        case K::Balls: return "balls:" + std::to_string(param);
        case K::UnitBalls: return "unit_balls:" + std::to_string(param);
        case K::Intervals: return "intervals";
        case K::Segments: return "segments";
        case K::Boxes: return "boxes:" + std::to_string(param);
        case K::CircleLinks: return "circle_links";
        case K::UnitCircleLinks: return "unit_circle_links";
        case K::BallOrders: return "ball_orders:" + std::to_string(param);
        case K::CircleOrders: return "circle_orders";
        case K::PosetDim: return "poset:" + std::to_string(param);
    }
    throw ConfigError("corrupt family id");
}

Family builtin(const BuiltinFamilyId& id) {
    using K = BuiltinFamilyId::Kind;
    switch (id.kind) {
        case K::Disks: return make_balls("disks", 2, true);
        case K::UnitDisks: return make_balls("unit_disks", 2, false);
        case K::Balls: return make_balls(id.name(), id.param, true);
        case K::UnitBalls: return make_balls(id.name(), id.param, false);
        case K::Intervals: return make_boxes("intervals", 1);
        case K::Segments: return make_segments();
        case K::Boxes: return make_boxes(id.name(), id.param);
        case K::CircleLinks: return make_circle_links(false);
        case K::UnitCircleLinks: return make_circle_links(true);
        case K::BallOrders: return make_ball_orders(id.name(), id.param);
        case K::CircleOrders: return make_ball_orders("circle_orders", 2);
        case K::PosetDim: return make_poset(id.param);
    }
    throw ConfigError("unsupported family id");
}

Family builtin(const std::string& name) { return builtin(BuiltinFamilyId::parse(name)); }

std::vector<std::string> builtin_names() {
    return {"disks",        "unit_disks",   "balls:<m>",  "unit_balls:<m>",
            "intervals",    "segments",     "boxes:<m>",  "circle_links",
            "unit_circle_links", "ball_orders:<m>", "circle_orders", "poset:<d>"};
}

VecR random_point(const Family& fam, Rng& rng, const BoxSpec& box, int bits, int max_retries) {
    if (box.dim() != fam.d) throw ConfigError("random_point: box dimension != family dimension");
    box.require_positive_volume();
    for (int t = 0; t < max_retries; ++t) {
        VecR p(fam.d);
        for (int c = 0; c < fam.d; ++c)
            p[c] = rng.dyadic(box.coords[static_cast<size_t>(c)].first,
                              box.coords[static_cast<size_t>(c)].second, bits);
        if (membership(fam.domain, p)) return p;
    }
    throw SearchExhausted("random_point: no point of the box landed in the domain after " +
                          std::to_string(max_retries) + " tries");
}

}  // namespace siglab
