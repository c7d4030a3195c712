#include <array>
#include <cmath>

#include "siglab/builtins.hpp"
#include "siglab/errors.hpp"

namespace siglab {

namespace {

constexpr int NV = 12;  // (a,b,c,d,e,r, a',b',c',d',e',r')

Polynomial v(int i) { return Polynomial::variable(NV, i); }

Polynomial cst(long c) { return Polynomial::constant(NV, Rat(c)); }

LinkingKernel build_kernel() {
    LinkingKernel k;
    Polynomial A = v(0), B = v(1), C = v(2), D = v(3), E = v(4), R = v(5);
    Polynomial A2 = v(6), B2 = v(7), C2 = v(8), D2 = v(9), E2 = v(10), R2 = v(11);

    k.d_diff = D - D2;
    k.e_diff = E - E2;
    Polynomial cross = D * E2 - D2 * E;  // de' - d'e

    // Direction of the plane-intersection line: (e-e', -(d-d'), de'-d'e).
    // tau spans the in-plane line through the center of C orthogonal to it.
    k.tau1 = -k.d_diff - E * cross;
    k.tau2 = -k.e_diff + D * cross;
    k.tau3 = E * k.e_diff + D * k.d_diff;

    // Foot point L = center + (u/q) * tau, from intersecting the line with
    // the plane d'x + e'y + z = d'a' + e'b' + c'.
    k.u = (D2 * A2 + E2 * B2 + C2) - (D2 * A + E2 * B + C);
    k.q = D2 * k.tau1 + E2 * k.tau2 + k.tau3;

    k.p1 = A * k.q + k.u * k.tau1;
    k.p2 = B * k.q + k.u * k.tau2;
    k.p3 = C * k.q + k.u * k.tau3;

    // h = r^2 - dist(L, center)^2 = p4 / q^2
    Polynomial tau_sq = k.tau1 * k.tau1 + k.tau2 * k.tau2 + k.tau3 * k.tau3;
    k.p4 = R * R * k.q * k.q - k.u * k.u * tau_sq;

    // q divides p4 exactly: tau is orthogonal to (d,e,1), so
    // |tau|^2 = q * (d^2 + e^2 + 1).
    k.g = R * R * k.q - k.u * k.u * (D * D + E * E + cst(1));
    if (!(k.p4 == k.q * k.g)) throw InvariantError("linking kernel: p4 != q*g");

    Polynomial s1 = k.p1 - k.q * A2;
    Polynomial s2 = k.p2 - k.q * B2;
    Polynomial s3 = k.p3 - k.q * C2;

    k.big_g = s1 * k.e_diff - s2 * k.d_diff + s3 * cross;

    Polynomial H = k.q * (s1 * s1) + k.p4 * (k.e_diff * k.e_diff) + k.q * (s2 * s2) +
                   k.p4 * (k.d_diff * k.d_diff) + k.q * (s3 * s3) + k.p4 * (cross * cross) -
                   k.q * k.q * k.q * (R2 * R2);

    // q divides H as well, which keeps the final expansion tractable.
    k.big_k = s1 * s1 + s2 * s2 + s3 * s3 + k.q * k.g - k.q * k.q * (R2 * R2);
    if (!(H == k.q * k.big_k)) throw InvariantError("linking kernel: H != q*K");

    // 4*p4*q*G^2 - H^2 == q^2 * (4*g*G^2 - K^2) in the polynomial ring,
    // given the two verified identities above.
    k.pred4 = k.q * k.q * (Rat(4) * (k.g * (k.big_g * k.big_g)) - k.big_k * k.big_k);
    return k;
}

}  // namespace

const LinkingKernel& LinkingKernel::instance() {
    static const LinkingKernel kernel = build_kernel();
    return kernel;
}

LinkTrace linking_predicate(const CircleSpec& c1, const CircleSpec& c2) {
    if (c1.r.sign() <= 0 || c2.r.sign() <= 0)
        throw ConfigError("linking_predicate: circle radius must be positive");
    const LinkingKernel& k = LinkingKernel::instance();
    VecR pt = concat(c1.as_vec(), c2.as_vec());

    Rat dd = k.d_diff.eval(pt);
    Rat ee = k.e_diff.eval(pt);
    Rat p4 = k.p4.eval(pt);
    // pred4 = q^2 (4 g G^2 - K^2), evaluated through the composed pieces.
    Rat qv = k.q.eval(pt);
    Rat gv = k.g.eval(pt);
    Rat Gv = k.big_g.eval(pt);
    Rat Kv = k.big_k.eval(pt);
    Rat val4 = qv * qv * (Rat(4) * gv * Gv * Gv - Kv * Kv);

    LinkTrace tr;
    tr.signs = {sign_of(dd), sign_of(ee), sign_of(p4), sign_of(val4)};
    tr.degenerate = tr.signs[0] == Sign::Zero || tr.signs[1] == Sign::Zero ||
                    tr.signs[2] == Sign::Zero || tr.signs[3] == Sign::Zero;
    if (tr.signs[0] == Sign::Zero && tr.signs[1] == Sign::Zero) {
        tr.link = false;  // parallel planes cannot link
        tr.degenerate = tr.signs[2] == Sign::Zero || tr.signs[3] == Sign::Zero;
        return tr;
    }
    if (tr.signs[2] != Sign::Plus) {
        tr.link = false;  // the intersection line misses or touches C
        return tr;
    }
    tr.link = tr.signs[3] == Sign::Plus;
    return tr;
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 cross3(const Vec3& x, const Vec3& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

double dot3(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

Vec3 normalize3(const Vec3& x) {
    double n = std::sqrt(dot3(x, x));
    return {x[0] / n, x[1] / n, x[2] / n};
}

struct CircleFrame {
    Vec3 center, e1, e2;
    double r;
};

CircleFrame frame_of(const CircleSpec& c) {
    CircleFrame f;
    f.center = {c.a.to_double(), c.b.to_double(), c.c.to_double()};
    f.r = c.r.to_double();
    Vec3 n = normalize3({c.d.to_double(), c.e.to_double(), 1.0});
    Vec3 u = std::abs(n[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    f.e1 = normalize3(cross3(n, u));
    f.e2 = normalize3(cross3(n, f.e1));
    return f;
}

}  // namespace

double gauss_linking_integral(const CircleSpec& c1, const CircleSpec& c2, int nodes) {
    CircleFrame f1 = frame_of(c1), f2 = frame_of(c2);
    const double two_pi = 2.0 * M_PI;
    const double h = two_pi / nodes;

    std::vector<Vec3> g1(static_cast<size_t>(nodes)), t1(static_cast<size_t>(nodes));
    std::vector<Vec3> g2(static_cast<size_t>(nodes)), t2(static_cast<size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
        double s = h * i, cs = std::cos(s), sn = std::sin(s);
        for (int c = 0; c < 3; ++c) {
            g1[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                f1.center[static_cast<size_t>(c)] +
                f1.r * (cs * f1.e1[static_cast<size_t>(c)] + sn * f1.e2[static_cast<size_t>(c)]);
            t1[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                f1.r * (-sn * f1.e1[static_cast<size_t>(c)] + cs * f1.e2[static_cast<size_t>(c)]);
            g2[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                f2.center[static_cast<size_t>(c)] +
                f2.r * (cs * f2.e1[static_cast<size_t>(c)] + sn * f2.e2[static_cast<size_t>(c)]);
            t2[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                f2.r * (-sn * f2.e1[static_cast<size_t>(c)] + cs * f2.e2[static_cast<size_t>(c)]);
        }
    }
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            Vec3 diff{g1[static_cast<size_t>(i)][0] - g2[static_cast<size_t>(j)][0],
                      g1[static_cast<size_t>(i)][1] - g2[static_cast<size_t>(j)][1],
                      g1[static_cast<size_t>(i)][2] - g2[static_cast<size_t>(j)][2]};
            double nrm = std::sqrt(dot3(diff, diff));
            double denom = nrm * nrm * nrm;
            sum += dot3(cross3(t1[static_cast<size_t>(i)], t2[static_cast<size_t>(j)]), diff) / denom;
        }
    }
    return sum * h * h / (4.0 * M_PI);
}

std::optional<bool> gauss_linking_oracle(const CircleSpec& c1, const CircleSpec& c2, int nodes) {
    double I = gauss_linking_integral(c1, c2, nodes);
    double nearest = std::round(I);
    if (std::abs(I - nearest) >= 0.3) return std::nullopt;  // within 0.2 of a half-integer
    return nearest != 0.0;
}

}  // namespace siglab
