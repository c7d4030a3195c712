#include "siglab/construct.hpp"

#include <algorithm>
#include <cmath>

#include "siglab/errors.hpp"
#include "siglab/linalg.hpp"

namespace siglab {

namespace {

/// Exact bound on |poly| over the box center +/- radius (per coordinate).
Rat box_abs_bound(const Polynomial& poly, const VecR& center, const Rat& radius) {
    Rat bound(0);
    for (const auto& [e, c] : poly.terms()) {
        Rat t = abs(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            Rat m = abs(center[static_cast<Eigen::Index>(i)]) + radius;
            t *= m.pow(e[i]);
        }
        bound += t;
    }
    return bound;
}

/// Rational over-estimate of the Euclidean norm: sup-norm * ceil(sqrt(d)).
Rat norm_over_estimate(const VecR& v) {
    Rat sup(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) sup = std::max(sup, abs(v[i]));
    return sup * Rat(ceil_sqrt_long(static_cast<long>(v.size())));
}

}  // namespace

GridParameters grid_parameters(const Family& fam, const SpanningSeed& seed, int m,
                               const Rat& delta) {
    if (m < 1) throw ConfigError("grid_parameters: m must be >= 1");
    const int d = fam.d;
    GridParameters gp;
    gp.delta = delta;

    // Rows of the inverse transpose give exact biorthogonality to the
    // gradient rows.
    MatR zmat = exact_inverse(seed.grad_matrix.transpose());
    gp.z.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) gp.z.push_back(zmat.row(i).transpose());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Rat dot = gp.z[static_cast<size_t>(i)].dot(seed.grad_matrix.row(j).transpose());
            if (dot != (i == j ? Rat(1) : Rat(0)))
                throw InvariantError("grid_parameters: z biorthogonality failed");
        }

    for (int i = 0; i < d; ++i) {
        const VecR& gb = seed.pairs[static_cast<size_t>(i)].cert.grad_b;
        int best = -1;
        for (int c = 0; c < d; ++c)
            if (!gb[c].is_zero() && (best < 0 || abs(gb[c]) > abs(gb[best]))) best = c;
        if (best < 0) throw InvariantError("grid_parameters: zero b-gradient in certified seed");
        VecR v = VecR::Zero(d);
        v[best] = gb[best].inverse();
        if (v.dot(gb) != Rat(1)) throw InvariantError("grid_parameters: v normalization failed");
        gp.v.push_back(std::move(v));
    }

    // Taylor constant: |P(p+h) - P(p) - grad P(p) . h| <= C |h|^2 with
    // C = max_i (1/2) * max row sum of |Hess P_{s_i}| over the delta-box.
    Rat c_bound(0);
    for (int i = 0; i < d; ++i) {
        const auto& pair = seed.pairs[static_cast<size_t>(i)];
        const Polynomial& pred = fam.preds[static_cast<size_t>(pair.cert.wall_index)];
        VecR center = concat(seed.a_star, pair.b);
        int nv = pred.num_vars();
        for (int u = 0; u < nv; ++u) {
            Rat row_sum(0);
            for (int w = 0; w < nv; ++w)
                row_sum += box_abs_bound(pred.partial(u).partial(w), center, delta);
            c_bound = std::max(c_bound, row_sum / Rat(2));
        }
    }
    gp.taylor_c = c_bound;

    Rat sum_z(0), sum_v(0), max_v(0);
    std::vector<Rat> z_bounds, v_bounds;
    for (int i = 0; i < d; ++i) {
        Rat zb = norm_over_estimate(gp.z[static_cast<size_t>(i)]);
        Rat vb = norm_over_estimate(gp.v[static_cast<size_t>(i)]);
        sum_z += zb;
        sum_v += vb;
        max_v = std::max(max_v, vb);
    }
    Rat mm(static_cast<long>(m));
    Rat eps(1);
    for (int j = 0; j <= 512; ++j) {
        bool ok = eps * mm * sum_z < delta && eps * mm * max_v < delta &&
                  eps * gp.taylor_c * mm * mm * (sum_z + sum_v) * (sum_z + sum_v) < Rat(1, 2);
        if (ok) {
            gp.eps = eps;
            return gp;
        }
        eps /= Rat(2);
    }
    throw InvariantError("grid_parameters: no admissible eps found (parameters degenerate)");
}

Grid build_grid(const Family& fam, const SpanningSeed& seed, int m, GridParameters params) {
    const int d = fam.d;
    Grid grid;
    grid.seed = seed;
    grid.m = m;
    grid.params = std::move(params);
    grid.b_pert.assign(static_cast<size_t>(d), {});
    grid.base_signs.assign(static_cast<size_t>(d), {});
    for (int i = 0; i < d; ++i) {
        const auto& pair = seed.pairs[static_cast<size_t>(i)];
        grid.base_signs[static_cast<size_t>(i)] = pair.cert.signs;
        for (int j = 1; j <= m; ++j) {
            VecR b = pair.b + (Rat(1, 2) - Rat(j)) * grid.params.eps * grid.params.v[static_cast<size_t>(i)];
            if (!membership(fam.domain, b))
                throw GridInvalid(i + 1, j, pair.cert.wall_index + 1, "grid point outside domain");
            grid.b_pert[static_cast<size_t>(i)].push_back(std::move(b));
        }
    }
    return grid;
}

VecR tuple_point(const Family& fam, const Grid& grid, const std::vector<int>& tuple) {
    const int d = fam.d;
    if (static_cast<int>(tuple.size()) != d) throw ConfigError("tuple_point: tuple length != d");
    for (int ji : tuple)
        if (ji < 1 || ji > grid.m) throw ConfigError("tuple_point: tuple entry out of range");

    VecR a = grid.seed.a_star;
    for (int i = 0; i < d; ++i)
        a += grid.params.eps * Rat(static_cast<long>(tuple[static_cast<size_t>(i)])) *
             grid.params.z[static_cast<size_t>(i)];
    if (!membership(fam.domain, a)) throw GridInvalid(0, 0, 0, "tuple point outside domain");

    for (int i = 0; i < d; ++i) {
        int si = grid.seed.pairs[static_cast<size_t>(i)].cert.wall_index;
        for (int j = 1; j <= grid.m; ++j) {
            VecR point = concat(a, grid.b_pert[static_cast<size_t>(i)][static_cast<size_t>(j - 1)]);
            for (int s = 0; s < fam.k(); ++s) {
                Sign got = sign_of(fam.preds[static_cast<size_t>(s)].eval(point));
                if (s == si) {
                    bool want_plus = j <= tuple[static_cast<size_t>(i)];
                    if (want_plus && got != Sign::Plus)
                        throw GridInvalid(i + 1, j, s + 1, "(ii) expected positive value");
                    if (!want_plus && got != Sign::Minus)
                        throw GridInvalid(i + 1, j, s + 1, "(iii) expected negative value");
                } else {
                    Sign base = grid.base_signs[static_cast<size_t>(i)][static_cast<size_t>(s)];
                    if (got == Sign::Zero) throw GridInvalid(i + 1, j, s + 1, "(i) predicate vanished");
                    if (got != base) throw GridInvalid(i + 1, j, s + 1, "(iv) sign drifted from base");
                }
            }
        }
    }
    return a;
}

namespace {

bool next_tuple(std::vector<int>& t, int m) {  // lexicographic, 1-based
    for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
        if (t[static_cast<size_t>(i)] < m) {
            ++t[static_cast<size_t>(i)];
            std::fill(t.begin() + i + 1, t.end(), 1);
            return true;
        }
    }
    return false;
}

double pow_count(int m, int d) { return std::pow(static_cast<double>(m), d); }

}  // namespace

VerifyReport verify_grid(const Family& fam, const Grid& grid, long exhaustive_cap,
                         long sample_count, Rng* rng) {
    VerifyReport report;
    const int d = fam.d;
    double total = pow_count(grid.m, d);
    report.exhaustive = total <= static_cast<double>(exhaustive_cap);
    auto check = [&](const std::vector<int>& t) {
        ++report.checked;
        try {
            VecR a = tuple_point(fam, grid, t);
            auto rec = tuple_recovery(fam, a, grid);
            if (rec != t) report.failures.push_back({t, 0, 0, 0, "tuple recovery mismatch"});
        } catch (const GridInvalid& g) {
            report.failures.push_back({t, g.i, g.j, g.s, g.condition});
        } catch (const Undecodable& u) {
            report.failures.push_back({t, 0, 0, 0, std::string("undecodable: ") + u.what()});
        }
    };
    if (report.exhaustive) {
        std::vector<int> t(static_cast<size_t>(d), 1);
        do {
            check(t);
        } while (next_tuple(t, grid.m));
    } else {
        Rng fallback(12345);
        Rng& r = rng ? *rng : fallback;
        for (long i = 0; i < sample_count; ++i) {
            std::vector<int> t(static_cast<size_t>(d));
            for (int c = 0; c < d; ++c)
                t[static_cast<size_t>(c)] = static_cast<int>(r.range(1, grid.m));
            check(t);
        }
    }
    return report;
}

Grid build_grid_verified(const Family& fam, const SpanningSeed& seed, int m, long exhaustive_cap,
                         int max_halvings) {
    GridParameters params = grid_parameters(fam, seed, m);
    for (int h = 0; h <= max_halvings; ++h) {
        try {
            Grid grid = build_grid(fam, seed, m, params);
            VerifyReport rep = verify_grid(fam, grid, exhaustive_cap);
            if (rep.ok()) return grid;
        } catch (const GridInvalid&) {
            // fall through to halving
        }
        params.eps /= Rat(2);
    }
    throw InvariantError("build_grid_verified: verification kept failing after eps halvings");
}

std::vector<int> tuple_recovery(const Family& fam, const VecR& a, const Grid& grid) {
    const int d = fam.d;
    std::vector<int> tuple(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        // Any vanishing predicate value makes the count ill-defined.
        for (int j = 1; j <= grid.m; ++j) {
            VecR point = concat(a, grid.b_pert[static_cast<size_t>(i)][static_cast<size_t>(j - 1)]);
            for (const auto& p : fam.preds)
                if (p.eval(point).is_zero())
                    throw Undecodable("tuple_recovery: predicate vanishes at grid row " +
                                      std::to_string(i + 1) + ", column " + std::to_string(j));
        }
        int ref = pair_label(fam, a, grid.b_pert[static_cast<size_t>(i)][0]);
        int count = 0;
        for (int j = 1; j <= grid.m; ++j)
            if (pair_label(fam, a, grid.b_pert[static_cast<size_t>(i)][static_cast<size_t>(j - 1)]) ==
                ref)
                ++count;
        tuple[static_cast<size_t>(i)] = count;
    }
    return tuple;
}

namespace {

struct AnchorSigns {
    // signs[i][j-1][s]: the required sign of P_s(a, b_i^j) for this tuple
    std::vector<std::vector<std::vector<Sign>>> signs;
};

AnchorSigns anchor_signs_for(const Family& fam, const Grid& grid, const std::vector<int>& tuple) {
    const int d = fam.d;
    AnchorSigns as;
    as.signs.assign(static_cast<size_t>(d), {});
    for (int i = 0; i < d; ++i) {
        int si = grid.seed.pairs[static_cast<size_t>(i)].cert.wall_index;
        as.signs[static_cast<size_t>(i)].assign(static_cast<size_t>(grid.m), {});
        for (int j = 1; j <= grid.m; ++j) {
            std::vector<Sign> sig = grid.base_signs[static_cast<size_t>(i)];
            sig[static_cast<size_t>(si)] =
                j <= tuple[static_cast<size_t>(i)] ? Sign::Plus : Sign::Minus;
            as.signs[static_cast<size_t>(i)][static_cast<size_t>(j - 1)] = std::move(sig);
        }
    }
    return as;
}

bool signs_match(const Family& fam, const VecR& a, const VecR& b, const std::vector<Sign>& want) {
    VecR point = concat(a, b);
    for (int s = 0; s < fam.k(); ++s)
        if (sign_of(fam.preds[static_cast<size_t>(s)].eval(point)) != want[static_cast<size_t>(s)])
            return false;
    return true;
}

bool pair_strong(const Family& fam, const VecR& a, const VecR& b) {
    VecR point = concat(a, b);
    for (const auto& p : fam.preds)
        if (p.eval(point).is_zero()) return false;
    return true;
}

}  // namespace

FactoryStats generate_labelings(const Family& fam, const SpanningSeed& seed, int n, int m,
                                Rng& rng, const LabelingSink& sink, long exhaustive_cap) {
    const int d = fam.d;
    if (m < 1 || static_cast<long>(d) * m >= n)
        throw ConfigError("generate_labelings: need 1 <= m < n/d");
    const int slots = n - d * m;

    Grid grid = build_grid_verified(fam, seed, m, exhaustive_cap);

    // Anchor points and their required cross-sign tables, one per tuple.
    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> t(static_cast<size_t>(d), 1);
        do {
            tuples.push_back(t);
        } while (next_tuple(t, m));
    }
    std::vector<VecR> anchors;
    std::vector<AnchorSigns> tables;
    anchors.reserve(tuples.size());
    for (const auto& t : tuples) {
        anchors.push_back(tuple_point(fam, grid, t));
        tables.push_back(anchor_signs_for(fam, grid, t));
    }

    FactoryStats stats;
    const long max_attempts = 512;

    // Last d*m vertices: perturbations of the grid points, keeping every
    // anchor's cross signs and mutual strong nonvanishing.
    std::vector<VecR> tail;
    tail.reserve(static_cast<size_t>(d) * m);
    for (int i = 0; i < d; ++i) {
        for (int j = 1; j <= m; ++j) {
            const VecR& base = grid.b_pert[static_cast<size_t>(i)][static_cast<size_t>(j - 1)];
            VecR chosen;
            bool found = false;
            Rat step = grid.params.eps / Rat(8);
            for (long attempt = 0; attempt < max_attempts && !found; ++attempt) {
                VecR cand = base;
                if (attempt > 0) {
                    cand += step * rng.direction(d);
                    step /= Rat(2);
                    if (step.is_zero()) break;
                    ++stats.perturbation_retries;
                }
                if (!membership(fam.domain, cand)) continue;
                bool ok = true;
                for (size_t t = 0; t < tuples.size() && ok; ++t)
                    ok = signs_match(fam, anchors[t], cand,
                                     tables[t].signs[static_cast<size_t>(i)][static_cast<size_t>(j - 1)]);
                for (const auto& prev : tail) {
                    if (!ok) break;
                    ok = pair_strong(fam, prev, cand);
                }
                if (ok) {
                    chosen = std::move(cand);
                    found = true;
                }
            }
            if (!found)
                throw InvariantError(
                    "generate_labelings: could not place grid vertex (i=" + std::to_string(i + 1) +
                    ", j=" + std::to_string(j) + ") generically; this indicates a bug");
            tail.push_back(std::move(chosen));
        }
    }

    // Enumerate tuple vectors lexicographically; each defines one labeling.
    std::vector<size_t> choice(static_cast<size_t>(slots), 0);
    const size_t tuple_count = tuples.size();
    while (true) {
        Configuration cfg;
        cfg.points.reserve(static_cast<size_t>(n));
        bool assembled = true;
        for (int l = 0; l < slots && assembled; ++l) {
            size_t ti = choice[static_cast<size_t>(l)];
            const VecR& base = anchors[ti];
            const AnchorSigns& table = tables[ti];
            bool found = false;
            Rat step = grid.params.eps / Rat(8);
            for (long attempt = 0; attempt < max_attempts && !found; ++attempt) {
                VecR cand = base;
                if (attempt > 0) {
                    cand += step * rng.direction(d);
                    step /= Rat(2);
                    if (step.is_zero()) break;
                    ++stats.perturbation_retries;
                }
                if (!membership(fam.domain, cand)) continue;
                bool ok = true;
                for (int i = 0; i < d && ok; ++i)
                    for (int j = 1; j <= m && ok; ++j)
                        ok = signs_match(
                            fam, cand, tail[static_cast<size_t>(i * m + (j - 1))],
                            table.signs[static_cast<size_t>(i)][static_cast<size_t>(j - 1)]);
                for (const auto& prev : cfg.points) {
                    if (!ok) break;
                    ok = pair_strong(fam, prev, cand);
                }
                if (ok) {
                    cfg.points.push_back(std::move(cand));
                    found = true;
                }
            }
            assembled = found;
        }
        if (!assembled)
            throw InvariantError("generate_labelings: slot perturbation failed generically");
        for (const auto& b : tail) cfg.points.push_back(b);

        EdgeLabeling el = label_configuration(fam, cfg);
        if (!strong_check(fam, cfg))
            throw InvariantError("generate_labelings: emitted witness is not strongly nonzero");
        sink(el, cfg);
        ++stats.emitted;

        // advance the tuple-vector odometer (last slot fastest)
        int pos = slots - 1;
        while (pos >= 0) {
            if (++choice[static_cast<size_t>(pos)] < tuple_count) break;
            choice[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return stats;
}

}  // namespace siglab
