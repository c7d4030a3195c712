#include "siglab/builtins.hpp"
#include "siglab/errors.hpp"

namespace siglab {

namespace {

Rat sq_dist(const VecR& a, const VecR& b, int m) {
    Rat s(0);
    for (int i = 0; i < m; ++i) {
        Rat diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

std::string balls_edge(const VecR& a, const VecR& b, int m, bool with_radius) {
    Rat d2 = sq_dist(a, b, m);
    Rat thr = with_radius ? (a[m] + b[m]) * (a[m] + b[m]) : Rat(4);
    return d2 < thr ? "edge" : "non-edge";
}

std::string boxes_edge(const VecR& a, const VecR& b, int m) {
    for (int i = 0; i < m; ++i) {
        const Rat &l = a[2 * i], &h = a[2 * i + 1];
        const Rat &l2 = b[2 * i], &h2 = b[2 * i + 1];
        if (l > h2 || l2 > h) return "non-edge";
    }
    return "edge";
}

std::string ball_order(const VecR& a, const VecR& b, int m) {
    Rat d2 = sq_dist(a, b, m);
    Rat rdiff = b[m] - a[m];
    if (rdiff.sign() > 0 && d2 <= rdiff * rdiff) return "prec";
    if (rdiff.sign() < 0 && d2 <= rdiff * rdiff) return "succ";
    return "incomparable";
}

std::string poset_order(const VecR& a, const VecR& b) {
    bool any_lt = false, any_gt = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) any_lt = true;
        if (a[i] > b[i]) any_gt = true;
    }
    if (any_lt && !any_gt) return "prec";
    if (any_gt && !any_lt) return "succ";
    return "incomparable";
}

using Pt2 = std::pair<Rat, Rat>;

int orient(const Pt2& p, const Pt2& q, const Pt2& r) {
    Rat cross = (q.first - p.first) * (r.second - p.second) -
                (q.second - p.second) * (r.first - p.first);
    return cross.sign();
}

bool on_segment(const Pt2& p, const Pt2& q, const Pt2& r) {
    // r collinear with pq assumed
    auto between = [](const Rat& lo, const Rat& hi, const Rat& x) {
        return (lo <= x && x <= hi) || (hi <= x && x <= lo);
    };
    return between(p.first, q.first, r.first) && between(p.second, q.second, r.second);
}

bool segments_intersect(const Pt2& p1, const Pt2& p2, const Pt2& p3, const Pt2& p4) {
    int d1 = orient(p3, p4, p1);
    int d2 = orient(p3, p4, p2);
    int d3 = orient(p1, p2, p3);
    int d4 = orient(p1, p2, p4);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(p3, p4, p1)) return true;
    if (d2 == 0 && on_segment(p3, p4, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, p3)) return true;
    if (d4 == 0 && on_segment(p1, p2, p4)) return true;
    return false;
}

std::string segments_edge(const VecR& a, const VecR& b) {
    // (alpha, beta, gamma, delta): endpoints (gamma, alpha*gamma+beta),
    // (delta, alpha*delta+beta)
    Pt2 p1{a[2], a[0] * a[2] + a[1]}, p2{a[3], a[0] * a[3] + a[1]};
    Pt2 p3{b[2], b[0] * b[2] + b[1]}, p4{b[3], b[0] * b[3] + b[1]};
    return segments_intersect(p1, p2, p3, p4) ? "edge" : "non-edge";
}

CircleSpec circle_from(const VecR& x, bool unit) {
    CircleSpec c;
    c.a = x[0];
    c.b = x[1];
    c.c = x[2];
    c.d = x[3];
    c.e = x[4];
    c.r = unit ? Rat(1) : x[5];
    return c;
}

}  // namespace

std::optional<std::string> oracle_relation(const BuiltinFamilyId& id, const VecR& a, const VecR& b) {
    using K = BuiltinFamilyId::Kind;
    switch (id.kind) {
        case K::Disks: return balls_edge(a, b, 2, true);
        case K::UnitDisks: return balls_edge(a, b, 2, false);
        case K::Balls: return balls_edge(a, b, id.param, true);
        case K::UnitBalls: return balls_edge(a, b, id.param, false);
        case K::Intervals: return boxes_edge(a, b, 1);
        case K::Boxes: return boxes_edge(a, b, id.param);
        case K::Segments: return segments_edge(a, b);
        case K::BallOrders: return ball_order(a, b, id.param);
        case K::CircleOrders: return ball_order(a, b, 2);
        case K::PosetDim: return poset_order(a, b);
        case K::CircleLinks:
        case K::UnitCircleLinks: {
            bool unit = id.kind == K::UnitCircleLinks;
            auto verdict = gauss_linking_oracle(circle_from(a, unit), circle_from(b, unit));
            if (!verdict) return std::nullopt;
            return *verdict ? std::string("link") : std::string("no-link");
        }
    }
    throw ConfigError("oracle_relation: unsupported family id");
}

}  // namespace siglab
