#include "siglab/wallpair.hpp"

#include <algorithm>
#include <cmath>

#include "siglab/builtins.hpp"
#include "siglab/errors.hpp"
#include "siglab/linalg.hpp"

namespace siglab {

std::optional<WallPairCert> is_general_wall_pair(const Family& fam, const VecR& a, const VecR& b) {
    if (static_cast<int>(a.size()) != fam.d || static_cast<int>(b.size()) != fam.d)
        return std::nullopt;
    if (!membership(fam.domain, a) || !membership(fam.domain, b)) return std::nullopt;
    auto sig = sign_vector(fam, a, b);
    int wall = -1;
    for (int s = 0; s < fam.k(); ++s) {
        if (sig[static_cast<size_t>(s)] != Sign::Zero) continue;
        if (wall >= 0) return std::nullopt;  // special: two predicates vanish
        wall = s;
    }
    if (wall < 0) return std::nullopt;
    auto [ga, gb] = gradient_split(fam.preds[static_cast<size_t>(wall)], a, b);
    bool gb_nonzero = false;
    for (Eigen::Index i = 0; i < gb.size(); ++i) gb_nonzero = gb_nonzero || !gb[i].is_zero();
    if (!gb_nonzero) return std::nullopt;  // special: vanishing b-gradient
    auto plus = sig, minus = sig;
    plus[static_cast<size_t>(wall)] = Sign::Plus;
    minus[static_cast<size_t>(wall)] = Sign::Minus;
    int lp = fam.phi(plus), lm = fam.phi(minus);
    if (lp == lm) return std::nullopt;
    return WallPairCert{wall, std::move(sig), std::move(gb), {lp, lm}};
}

namespace {

/// Rational roots of a degree <= 2 coefficient list (ascending). Quadratics
/// contribute roots only when the discriminant is a perfect rational square.
std::vector<Rat> rational_roots(const std::vector<Rat>& c) {
    std::vector<Rat> roots;
    if (c.size() == 2 && !c[1].is_zero()) {
        roots.push_back(-c[0] / c[1]);
    } else if (c.size() == 3 && !c[2].is_zero()) {
        Rat disc = c[1] * c[1] - Rat(4) * c[0] * c[2];
        Rat sq;
        if (Rat::exact_sqrt(disc, sq)) {
            Rat two_a = Rat(2) * c[2];
            roots.push_back((-c[1] + sq) / two_a);
            roots.push_back((-c[1] - sq) / two_a);
        }
    }
    return roots;
}

int y_degree(const Polynomial& pred, int d) {
    int deg = 0;
    for (const auto& [e, coeff] : pred.terms()) {
        int yd = 0;
        for (int i = d; i < 2 * d; ++i) yd += static_cast<int>(e[static_cast<size_t>(i)]);
        deg = std::max(deg, yd);
    }
    return deg;
}

/// Constant Hessian of Q(y) when Q has degree <= 2.
MatR quadratic_hessian(const Polynomial& q, int d) {
    MatR h = MatR::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Polynomial second = q.partial(i).partial(j);
            if (second.degree() > 0) throw InvariantError("quadratic_hessian: degree > 2");
            h(i, j) = second.is_zero() ? Rat(0) : second.terms().begin()->second;
        }
    return h;
}

/// Detects Q(y) = c * (|y - center|^2 - radius^2) with rational radius.
bool sphere_form(const Polynomial& q, int d, VecR& center, Rat& radius) {
    if (q.degree() != 2) return false;
    MatR h = quadratic_hessian(q, d);
    Rat c = h(0, 0) / Rat(2);
    if (c.is_zero()) return false;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (h(i, j) != (i == j ? Rat(2) * c : Rat(0))) return false;
    center = VecR(d);
    VecR origin = VecR::Zero(d);
    for (int i = 0; i < d; ++i) center[i] = -q.partial(i).eval(origin) / (Rat(2) * c);
    Rat k0 = q.eval(origin);
    Rat rho = center.dot(center) - k0 / c;
    if (rho.sign() <= 0) return false;
    return Rat::exact_sqrt(rho, radius);
}

/// Rational unit vector close to the given float direction, by dyadic
/// rounding of the inverse stereographic parameter.
VecR rational_unit_vector(const std::vector<double>& dir, int bits = 20) {
    int d = static_cast<int>(dir.size());
    double norm = 0;
    for (double x : dir) norm += x * x;
    norm = std::sqrt(norm);
    std::vector<double> u(dir);
    if (norm < 1e-12) {
        u.assign(static_cast<size_t>(d), 0.0);
        u[0] = 1.0;
    } else {
        for (double& x : u) x /= norm;
    }
    if (d == 1) return vec_from({Rat(u[0] >= 0 ? 1 : -1)});

    int pole = 0;
    for (int i = 1; i < d; ++i)
        if (std::abs(u[static_cast<size_t>(i)]) > std::abs(u[static_cast<size_t>(pole)])) pole = i;
    int sgn_pole = u[static_cast<size_t>(pole)] >= 0 ? 1 : -1;
    // Project from the pole opposite the dominant axis, round the parameter,
    // and map back; the image is exactly on the unit sphere.
    std::vector<Rat> t;
    Rat t_sq(0);
    double denom = 1.0 + sgn_pole * u[static_cast<size_t>(pole)];
    for (int i = 0; i < d; ++i) {
        if (i == pole) continue;
        double ti = u[static_cast<size_t>(i)] / denom;
        Rat tr = Rat::round_dyadic(Rat(mpq_class(ti)), bits);
        t.push_back(tr);
        t_sq += tr * tr;
    }
    Rat scale = (Rat(1) + t_sq).inverse();
    VecR w(d);
    w[pole] = Rat(sgn_pole) * (Rat(1) - t_sq) * scale;
    size_t idx = 0;
    for (int i = 0; i < d; ++i) {
        if (i == pole) continue;
        w[i] = Rat(2) * t[idx++] * scale;
    }
    return w;
}

/// Exact rational points b with P_s(a, b) = 0 near b_hint, produced by
/// degree <= 2 solving along segments, coordinate lines, Hessian-isotropic
/// two-coordinate lines, and a rational sphere parametrization.
std::vector<VecR> exact_zero_candidates(const Family& fam, int s, const VecR& a, const VecR& b_hint,
                                        const VecR* seg_from, const VecR* seg_to,
                                        std::string* diagnostic) {
    const Polynomial& pred = fam.preds[static_cast<size_t>(s)];
    const int d = fam.d;
    std::vector<VecR> out;

    if (y_degree(pred, d) > 2) {
        if (diagnostic && diagnostic->empty())
            *diagnostic = "predicate " + std::to_string(s + 1) +
                          " has degree > 2 in the second point block; exact root snapping "
                          "is unsupported for this family";
        return out;
    }

    Polynomial q = pred.substitute_prefix(a);  // polynomial in the b-block

    if (seg_from && seg_to) {
        VecR dir = *seg_to - *seg_from;
        auto coeffs = restrict_to_line(q, *seg_from, dir);
        for (const Rat& t : rational_roots(coeffs))
            if (t.sign() > 0 && t < Rat(1)) out.push_back(*seg_from + t * dir);
    }

    VecR base(d);
    for (int i = 0; i < d; ++i) base[i] = Rat::round_dyadic(b_hint[i], 24);

    std::vector<VecR> dirs;
    for (int c = 0; c < d; ++c) {
        VecR e = VecR::Zero(d);
        e[c] = Rat(1);
        dirs.push_back(e);
    }
    if (q.degree() == 2) {
        // Directions along which the quadratic term cancels give linear
        // restrictions with guaranteed rational roots.
        MatR h = quadratic_hessian(q, d);
        for (int c1 = 0; c1 < d; ++c1)
            for (int c2 = c1 + 1; c2 < d; ++c2) {
                // coefficient of t^2 along e_{c1} + w e_{c2}:
                //   (h11 + 2 w h12 + w^2 h22) / 2
                std::vector<Rat> poly{h(c1, c1), Rat(2) * h(c1, c2), h(c2, c2)};
                for (const Rat& w : rational_roots(poly)) {
                    VecR v = VecR::Zero(d);
                    v[c1] = Rat(1);
                    v[c2] = w;
                    dirs.push_back(v);
                }
            }
    }
    for (const auto& dir : dirs) {
        auto coeffs = restrict_to_line(q, base, dir);
        for (const Rat& t : rational_roots(coeffs)) out.push_back(base + t * dir);
    }

    VecR center;
    Rat radius;
    if (sphere_form(q, d, center, radius)) {
        std::vector<double> dir(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) dir[static_cast<size_t>(i)] = (b_hint[i] - center[i]).to_double();
        out.push_back(center + radius * rational_unit_vector(dir));
    }
    return out;
}

std::vector<VecR> deterministic_bases(const Family& fam, const VecR& a, int salt) {
    // The salt reshuffles both the offset patterns and their order so that
    // successive calls probe genuinely different directions (rank building
    // needs wall pairs whose gradients are not parallel).
    const int d = fam.d;
    std::vector<std::vector<long>> pats;
    pats.emplace_back(static_cast<size_t>(d), 1);  // all-ones
    for (int c = 0; c < d; ++c) {
        std::vector<long> axis(static_cast<size_t>(d), 0);
        axis[static_cast<size_t>(c)] = 1;
        pats.push_back(axis);
        std::vector<long> bent(static_cast<size_t>(d), 1);
        bent[static_cast<size_t>(c)] = -1;
        pats.push_back(bent);
    }
    std::vector<long> mixed(static_cast<size_t>(d)), alternating(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        mixed[static_cast<size_t>(i)] = 1 + (salt + i) % 3;
        alternating[static_cast<size_t>(i)] =
            (salt + i) % 2 == 0 ? mixed[static_cast<size_t>(i)] : -mixed[static_cast<size_t>(i)];
    }
    pats.push_back(std::move(mixed));
    pats.push_back(std::move(alternating));
    std::rotate(pats.begin(), pats.begin() + (salt % static_cast<long>(pats.size())), pats.end());

    std::vector<long> scales{1, 3, 2};
    std::rotate(scales.begin(), scales.begin() + (salt % 3), scales.end());

    std::vector<VecR> bases;
    for (long sc : scales)
        for (const auto& pat : pats) {
            VecR b = a;
            for (int i = 0; i < d; ++i) b[i] += Rat(pat[static_cast<size_t>(i)] * sc);
            bases.push_back(std::move(b));
        }
    return bases;
}

std::optional<WallPairSeed> certify_candidates(const Family& fam, const VecR& a,
                                               const std::vector<VecR>& candidates, int want) {
    for (const auto& b : candidates) {
        if (static_cast<int>(b.size()) != fam.d) continue;
        if (!membership(fam.domain, b)) continue;
        auto cert = is_general_wall_pair(fam, a, b);
        if (cert && (want < 0 || cert->wall_index == want))
            return WallPairSeed{a, b, std::move(*cert)};
    }
    return std::nullopt;
}

std::vector<VecR> base_point_candidates(const Family& fam, const BoxSpec& box) {
    std::vector<VecR> out;
    VecR zero = VecR::Zero(fam.d);
    out.push_back(zero);
    for (int c = 0; c < fam.d; ++c) {
        VecR e = zero;
        e[c] = Rat(1);
        out.push_back(e);
    }
    // Points with all coordinates distinct and nonzero avoid the degenerate
    // slices where several predicates vanish together.
    VecR ascending(fam.d), ones(fam.d);
    for (int c = 0; c < fam.d; ++c) {
        ascending[c] = Rat(c + 1);
        ones[c] = Rat(1);
    }
    out.push_back(std::move(ascending));
    out.push_back(std::move(ones));
    if (box.dim() == fam.d) {
        VecR mid(fam.d);
        for (int c = 0; c < fam.d; ++c)
            mid[c] = (box.coords[static_cast<size_t>(c)].first +
                      box.coords[static_cast<size_t>(c)].second) /
                     Rat(2);
        out.push_back(mid);
    }
    std::vector<VecR> in_domain;
    for (auto& p : out)
        if (membership(fam.domain, p)) in_domain.push_back(std::move(p));
    return in_domain;
}

}  // namespace

WallPairResult find_wall_pair(const Family& fam, Rng& rng, const WallSearchOptions& opts,
                              const VecR* fixed_a) {
    WallPairResult result;
    const int d = fam.d;
    const int k = fam.k();

    // Deterministic probe phase: exact solves along a fixed schedule of lines.
    std::vector<VecR> a_candidates;
    if (!opts.use_probes) {
        // fall through to the random phase
    } else if (fixed_a) {
        a_candidates.push_back(*fixed_a);
    } else {
        a_candidates = base_point_candidates(fam, opts.box);
        if (!a_candidates.empty())
            std::rotate(a_candidates.begin(),
                        a_candidates.begin() +
                            (opts.probe_salt % static_cast<long>(a_candidates.size())),
                        a_candidates.end());
    }
    for (const auto& a : a_candidates) {
        for (const auto& base : deterministic_bases(fam, a, opts.probe_salt)) {
            for (int s = 0; s < k; ++s) {
                if (opts.want_index >= 0 && s != opts.want_index) continue;
                auto cands =
                    exact_zero_candidates(fam, s, a, base, nullptr, nullptr, &result.diagnostic);
                if (auto seed = certify_candidates(fam, a, cands, opts.want_index)) {
                    result.seed = std::move(seed);
                    return result;
                }
            }
        }
    }

    // Random phase: bracket a sign change of one predicate along a segment
    // whose other predicates keep a fixed nonzero sign, then snap exactly.
    for (long trial = 0; trial < opts.budget; ++trial) {
        VecR a;
        try {
            a = fixed_a ? *fixed_a : random_point(fam, rng, opts.box, opts.bits);
            VecR b1 = random_point(fam, rng, opts.box, opts.bits);
            VecR b2 = random_point(fam, rng, opts.box, opts.bits);
            auto sig1 = sign_vector(fam, a, b1);
            auto sig2 = sign_vector(fam, a, b2);
            int s = -1;
            bool usable = true;
            for (int i = 0; i < k && usable; ++i) {
                Sign x = sig1[static_cast<size_t>(i)], y = sig2[static_cast<size_t>(i)];
                if (x == Sign::Zero || y == Sign::Zero) {
                    usable = false;
                } else if (x != y) {
                    if (s >= 0)
                        usable = false;  // more than one predicate flips
                    else
                        s = i;
                }
            }
            if (!usable || s < 0) continue;
            if (opts.want_index >= 0 && s != opts.want_index) continue;

            // Float bisection to 2^-40 of the segment for the snap hint.
            const Polynomial& pred = fam.preds[static_cast<size_t>(s)];
            std::vector<double> pa(static_cast<size_t>(2 * d));
            for (int i = 0; i < d; ++i) pa[static_cast<size_t>(i)] = a[i].to_double();
            auto eval_at = [&](double t) {
                for (int i = 0; i < d; ++i) {
                    double lo = b1[i].to_double(), hi = b2[i].to_double();
                    pa[static_cast<size_t>(d + i)] = lo + t * (hi - lo);
                }
                return pred.eval_double(pa);
            };
            double lo = 0.0, hi = 1.0;
            double flo = eval_at(lo);
            for (int it = 0; it < 40; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = eval_at(mid);
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double tm = 0.5 * (lo + hi);
            VecR hint(d);
            for (int i = 0; i < d; ++i)
                hint[i] = b1[i] + Rat(mpq_class(tm)) * (b2[i] - b1[i]);
            auto cands = exact_zero_candidates(fam, s, a, hint, &b1, &b2, &result.diagnostic);
            if (auto seed = certify_candidates(fam, a, cands, opts.want_index)) {
                result.seed = std::move(seed);
                return result;
            }
        } catch (const SearchExhausted&) {
            continue;  // box missed the domain this trial
        }
    }
    if (result.diagnostic.empty())
        result.diagnostic = "budget exhausted without a certified wall pair";
    return result;
}

SpanningResult find_spanning_seed(const Family& fam, Rng& rng, const WallSearchOptions& opts) {
    SpanningResult out;
    const int d = fam.d;
    int best_rank = 0;

    // Some base points sit on degenerate slices from which one gradient
    // direction is unreachable (every wall of the missing kind is special
    // there), so a stalled build restarts from a rotated base point.
    const int restarts = 4;
    for (int restart = 0; restart < restarts; ++restart) {
        WallSearchOptions first = opts;
        first.want_index = -1;
        first.probe_salt = restart;
        auto first_pair = find_wall_pair(fam, rng, first, nullptr);
        if (!first_pair.seed) {
            if (out.diagnostic.empty())
                out.diagnostic = "no initial wall pair: " + first_pair.diagnostic;
            continue;
        }
        VecR a_star = first_pair.seed->a;

        std::vector<WallPairSeed> pairs{std::move(*first_pair.seed)};
        MatR rows(1, d);
        rows.row(0) = gradient_split(fam.preds[static_cast<size_t>(pairs[0].cert.wall_index)],
                                     a_star, pairs[0].b)
                          .first.transpose();
        int rank = exact_rank(rows);
        if (rank == 0) {
            pairs.clear();
            rows.resize(0, d);
        }

        // Split the budget over rotating (wall index, probe salt) attempts so
        // the total work per restart tracks opts.budget.
        long attempts = std::max<long>(16, 4L * d * fam.k());
        long sub_budget = std::max<long>(64, opts.budget / attempts);
        for (long attempt = 0; attempt < attempts && rank < d; ++attempt) {
            WallSearchOptions sub = opts;
            sub.want_index = fam.k() > 1 ? static_cast<int>(attempt % fam.k()) : -1;
            sub.probe_salt = static_cast<int>(attempt);
            sub.budget = sub_budget;
            auto r = find_wall_pair(fam, rng, sub, &a_star);
            if (!r.seed) continue;
            VecR ga = gradient_split(fam.preds[static_cast<size_t>(r.seed->cert.wall_index)],
                                     a_star, r.seed->b)
                          .first;
            MatR trial(rank + 1, d);
            if (rank > 0) trial.topRows(rank) = rows.topRows(rank);
            trial.row(rank) = ga.transpose();
            if (exact_rank(trial) > rank) {
                rows = trial;
                ++rank;
                pairs.push_back(std::move(*r.seed));
            }
        }
        best_rank = std::max(best_rank, rank);
        if (rank < d) continue;

        SpanningSeed seed;
        seed.a_star = a_star;
        seed.pairs = std::move(pairs);
        seed.grad_matrix = rows;
        seed.det = bareiss_determinant(rows);
        if (seed.det.is_zero())
            throw InvariantError("spanning seed: full-rank rows with zero determinant");
        out.seed = std::move(seed);
        out.diagnostic.clear();
        return out;
    }
    out.diagnostic = "rank " + std::to_string(best_rank) + " < d after " +
                     std::to_string(restarts) + " restarts; not a disproof";
    return out;
}

void recertify(const Family& fam, const SpanningSeed& seed) {
    if (static_cast<int>(seed.pairs.size()) != fam.d)
        throw InvariantError("spanning seed: expected d wall pairs");
    for (size_t i = 0; i < seed.pairs.size(); ++i) {
        const auto& p = seed.pairs[i];
        if (!vec_equal(p.a, seed.a_star))
            throw InvariantError("spanning seed: pair does not share the base point");
        auto cert = is_general_wall_pair(fam, p.a, p.b);
        if (!cert || cert->wall_index != p.cert.wall_index)
            throw InvariantError("spanning seed: pair " + std::to_string(i + 1) +
                                 " failed re-certification");
        VecR ga = gradient_split(fam.preds[static_cast<size_t>(cert->wall_index)], p.a, p.b).first;
        for (int c = 0; c < fam.d; ++c)
            if (seed.grad_matrix(static_cast<Eigen::Index>(i), c) != ga[c])
                throw InvariantError("spanning seed: stored gradient row mismatch");
    }
    Rat det = bareiss_determinant(seed.grad_matrix);
    if (det != seed.det || det.is_zero())
        throw InvariantError("spanning seed: determinant mismatch or zero");
}

}  // namespace siglab
