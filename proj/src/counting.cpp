#include "siglab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "siglab/errors.hpp"

namespace siglab {

mpz_class sign_pattern_bound(long l, long m, long D) {
    if (m < 1 || l < m || D < 1)
        throw ConfigError("sign_pattern_bound: need l >= m >= 1 and D >= 1");
    Rat base = Rat(24) * Rat(D) * Rat(l) / Rat(m);
    Rat val = base.pow(static_cast<unsigned>(m));
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), val.numerator().get_mpz_t(), val.denominator().get_mpz_t());
    return q;
}

mpz_class warren_bound(long n, long d, long k, long D) {
    if (n < 1 || d < 1 || k < 1 || D < 1) throw ConfigError("warren_bound: parameters must be >= 1");
    // The closed form stays a sound upper bound even when C(n,2)*k < d*n:
    // the pattern count is then at most 3^(C(n,2)*k) < (12*D*k*n)^(d*n).
    mpz_class base = 12 * mpz_class(D) * k * n;
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(d * n));
    return out;
}

mpz_class lower_bound_formula(long n, long m, long d) {
    if (m < 1 || d < 1 || d * m >= n) throw ConfigError("lower_bound_formula: need 1 <= m < n/d");
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), mpz_class(m).get_mpz_t(),
               static_cast<unsigned long>(d * (n - d * m)));
    return out;
}

std::string canonical_bytes(const EdgeLabeling& el) {
    std::string out;
    out.reserve(4 + 2 * el.pair_count());
    uint32_t n = static_cast<uint32_t>(el.n());
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<char>((n >> shift) & 0xff));
    for (int lab : el.flat()) {
        out.push_back(static_cast<char>((lab >> 8) & 0xff));
        out.push_back(static_cast<char>(lab & 0xff));
    }
    return out;
}

namespace {

struct TrialOutcome {
    std::unordered_map<std::string, long> first_seen;
};

void run_trials(const Family& fam, int n, uint64_t seed, long from, long to, long stride,
                const SampleOptions& opts, TrialOutcome& out, std::exception_ptr& error) {
    try {
        for (long t = from; t < to; t += stride) {
            Rng rng = Rng::for_trial(seed, static_cast<uint64_t>(t));
            Configuration cfg;
            cfg.points.reserve(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                cfg.points.push_back(random_point(fam, rng, opts.box, opts.bits));
            if (opts.strong_only && !strong_check(fam, cfg)) continue;
            std::string key = canonical_bytes(label_configuration(fam, cfg));
            auto [it, fresh] = out.first_seen.emplace(std::move(key), t);
            if (!fresh) it->second = std::min(it->second, t);
        }
    } catch (...) {
        error = std::current_exception();
    }
}

}  // namespace

CountReport sample_count(const Family& fam, int n, long trials, uint64_t seed,
                         const SampleOptions& opts) {
    if (trials < 1) throw ConfigError("sample_count: trials must be >= 1");
    if (n < 1) throw ConfigError("sample_count: n must be >= 1");
    int workers = std::max(1, opts.workers);

    std::vector<TrialOutcome> outcomes(static_cast<size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    if (workers == 1) {
        run_trials(fam, n, seed, 0, trials, 1, opts, outcomes[0], errors[0]);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(run_trials, std::cref(fam), n, seed, static_cast<long>(w), trials,
                              static_cast<long>(workers), std::cref(opts),
                              std::ref(outcomes[static_cast<size_t>(w)]),
                              std::ref(errors[static_cast<size_t>(w)]));
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::unordered_map<std::string, long> merged;
    for (auto& o : outcomes)
        for (auto& [key, t] : o.first_seen) {
            auto [it, fresh] = merged.emplace(key, t);
            if (!fresh) it->second = std::min(it->second, t);
        }

    CountReport rep;
    rep.family = fam.name;
    rep.n = n;
    rep.trials = trials;
    rep.strong_only = opts.strong_only;
    rep.distinct_count = static_cast<long>(merged.size());
    if (n > 1 && rep.distinct_count > 1)
        rep.exponent = std::log(static_cast<double>(rep.distinct_count)) /
                       (static_cast<double>(n) * std::log(static_cast<double>(n)));
    long window_start = trials - trials / 5;
    rep.saturated = true;
    for (auto& [key, t] : merged)
        if (t >= window_start) {
            rep.saturated = false;
            break;
        }
    if (fam.k() >= 1 && fam.max_pred_degree() >= 1)
        rep.warren = warren_bound(n, fam.d, fam.k(), fam.max_pred_degree());
    if (opts.lower_m) rep.lower = lower_bound_formula(n, *opts.lower_m, fam.d);
    if (rep.warren && mpz_class(rep.distinct_count) > *rep.warren)
        throw InvariantError("sample_count: distinct count exceeds the Warren-type bound");
    return rep;
}

namespace {

/// Enumerates weak orders (ordered set partitions) of {0..k-1}: each item
/// either joins an existing block or opens a new block in any gap of the
/// block order. found(level_of, num_blocks) with level_of[i] the block rank.
void enumerate_weak_orders(int k, const std::function<void(const std::vector<int>&, int)>& found) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> level_of(static_cast<size_t>(k), 0);
    std::function<void(int)> rec = [&](int item) {
        if (item == k) {
            for (size_t b = 0; b < blocks.size(); ++b)
                for (int it : blocks[b]) level_of[static_cast<size_t>(it)] = static_cast<int>(b);
            found(level_of, static_cast<int>(blocks.size()));
            return;
        }
        for (size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(item);
            rec(item + 1);
            blocks[b].pop_back();
        }
        for (size_t gap = 0; gap <= blocks.size(); ++gap) {
            blocks.insert(blocks.begin() + static_cast<long>(gap), {item});
            rec(item + 1);
            blocks.erase(blocks.begin() + static_cast<long>(gap));
        }
    };
    rec(0);
}

}  // namespace

mpz_class brute_force_count_1d(const BuiltinFamilyId& id, int n, bool include_ties) {
    using K = BuiltinFamilyId::Kind;
    bool poset1 = id.kind == K::PosetDim && id.param == 1;
    bool intervals = id.kind == K::Intervals;
    if (!poset1 && !intervals)
        throw ConfigError("brute_force_count_1d: family is not order-type-determined "
                          "(supported: poset:1, intervals)");
    Family fam = builtin(id);
    std::set<std::string> seen;

    if (poset1) {
        enumerate_weak_orders(n, [&](const std::vector<int>& block_of, int blocks) {
            if (!include_ties && blocks != n) return;
            Configuration cfg;
            for (int i = 0; i < n; ++i)
                cfg.points.push_back(vec_from({Rat(static_cast<long>(block_of[static_cast<size_t>(i)]))}));
            seen.insert(canonical_bytes(label_configuration(fam, cfg)));
        });
    } else {
        // 2n endpoint slots (l_1, h_1, ..., l_n, h_n); configurations need
        // l_i < h_i, and without ties all endpoint values must be distinct.
        enumerate_weak_orders(2 * n, [&](const std::vector<int>& block_of, int blocks) {
            if (!include_ties && blocks != 2 * n) return;
            Configuration cfg;
            for (int i = 0; i < n; ++i) {
                int l = block_of[static_cast<size_t>(2 * i)];
                int h = block_of[static_cast<size_t>(2 * i + 1)];
                if (l >= h) return;
                cfg.points.push_back(vec_from({Rat(static_cast<long>(l)), Rat(static_cast<long>(h))}));
            }
            seen.insert(canonical_bytes(label_configuration(fam, cfg)));
        });
    }
    return mpz_class(static_cast<long>(seen.size()));
}

}  // namespace siglab
