#include "qcover/degseq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcover {

bool DegseqContext::window_binds(std::uint32_t s) const { return double(s) >= params.c_log_n(); }

Rational DegseqContext::window_lo(std::uint32_t s) const {
    return (Rational(1, 2) + params.alpha() - gamma) * s;
}

Rational DegseqContext::window_hi(std::uint32_t s) const {
    return (Rational(1, 2) + params.alpha() + gamma) * s;
}

DegseqContext make_degseq_context(const QuasicliqueParams& p, const Rational& gamma, std::uint32_t l,
                                  std::uint32_t e_U) {
    if (!(l == 0 || l == 2)) throw std::invalid_argument("l must be 0 or 2");
    if (e_U > (l == 2 ? 1u : 0u)) throw std::invalid_argument("e(U) inconsistent with l");
    if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
    return DegseqContext{p, gamma, l, e_U};
}

JGammaCheck in_J_gamma(const std::vector<std::uint32_t>& seq, const DegseqContext& ctx) {
    if (seq.size() != ctx.len())
        throw std::invalid_argument("sequence length must be t - l = " + std::to_string(ctx.len()));
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::uint32_t s = ctx.l + std::uint32_t(i);
        std::uint32_t js = seq[i];
        if (js > s) return {false, "j_" + std::to_string(s) + " = " + std::to_string(js) + " exceeds s"};
        if (ctx.window_binds(s)) {
            Rational j(js);
            if (j < ctx.window_lo(s) || j > ctx.window_hi(s))
                return {false, "j_" + std::to_string(s) + " = " + std::to_string(js) + " outside window [" +
                                   to_string(ctx.window_lo(s)) + ", " + to_string(ctx.window_hi(s)) + "]"};
        }
        sum += js;
    }
    if (sum != ctx.target_sum())
        return {false, "sum " + std::to_string(sum) + " != T - e(U) = " + std::to_string(ctx.target_sum())};
    return {true, ""};
}

namespace {

// Integer range [lo, hi] admissible at position s; lo > hi encodes empty.
void j_bounds(const DegseqContext& ctx, std::uint32_t s, std::uint32_t& lo, std::uint32_t& hi) {
    lo = 0;
    hi = s;
    if (!ctx.window_binds(s)) return;
    Rational wlo = ctx.window_lo(s), whi = ctx.window_hi(s);
    Integer lo_z, hi_z;  // smallest integer >= wlo, largest integer <= whi
    mpz_cdiv_q(lo_z.get_mpz_t(), wlo.get_num().get_mpz_t(), wlo.get_den().get_mpz_t());
    mpz_fdiv_q(hi_z.get_mpz_t(), whi.get_num().get_mpz_t(), whi.get_den().get_mpz_t());
    if (hi_z < 0 || lo_z > Integer(s) || lo_z > hi_z) {
        lo = 1;
        hi = 0;
        return;
    }
    if (lo_z > 0) lo = std::uint32_t(lo_z.get_ui());
    if (hi_z < Integer(s)) hi = std::uint32_t(hi_z.get_ui());
    if (lo > hi) {
        lo = 1;
        hi = 0;
    }
}

}  // namespace

std::vector<std::vector<std::uint32_t>> enumerate_J_gamma(const DegseqContext& ctx,
                                                          const SearchBudget& budget) {
    const std::uint32_t len = ctx.len();
    std::vector<std::uint32_t> lo(len), hi(len);
    for (std::uint32_t i = 0; i < len; ++i) {
        j_bounds(ctx, ctx.l + i, lo[i], hi[i]);
        if (lo[i] > hi[i]) return {};
    }
    // Suffix sums of the per-position bounds for residual pruning.
    std::vector<std::uint64_t> suf_lo(len + 1, 0), suf_hi(len + 1, 0);
    for (std::uint32_t i = len; i-- > 0;) {
        suf_lo[i] = suf_lo[i + 1] + lo[i];
        suf_hi[i] = suf_hi[i + 1] + hi[i];
    }

    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> seq(len);
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, std::uint32_t pos, std::uint64_t remaining) -> void {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("J_gamma enumeration budget exhausted");
        if (pos == len) {
            if (remaining == 0) out.push_back(seq);
            return;
        }
        if (remaining < suf_lo[pos] || remaining > suf_hi[pos]) return;
        for (std::uint32_t js = lo[pos]; js <= hi[pos]; ++js) {
            if (js > remaining) break;
            seq[pos] = js;
            self(self, pos + 1, remaining - js);
        }
    };
    rec(rec, 0, ctx.target_sum());
    return out;
}

std::vector<std::uint32_t> backward_degrees(const Graph& g, const std::vector<std::uint32_t>& tuple,
                                            std::uint32_t l) {
    std::set<std::uint32_t> seen(tuple.begin(), tuple.end());
    if (seen.size() != tuple.size()) throw std::invalid_argument("tuple entries must be distinct");
    if (l >= tuple.size()) throw std::invalid_argument("l must be below the tuple length");
    Bitset prefix(g.order());
    for (std::uint32_t i = 0; i < l; ++i) prefix.set(tuple[i]);
    std::vector<std::uint32_t> out;
    out.reserve(tuple.size() - l);
    // Entry for s counts edges from x_{s+1} back into {x_1..x_s}; 0-based
    // that is |N(tuple[s]) ∩ {tuple[0..s-1]}| for s = l..t-1.
    for (std::uint32_t s = l; s < tuple.size(); ++s) {
        if (tuple[s] >= g.order()) throw std::out_of_range("tuple vertex out of range");
        out.push_back(g.neighbors(tuple[s]).intersection_count(prefix));
        prefix.set(tuple[s]);
    }
    return out;
}

bool is_admissible(const Graph& g, const std::vector<std::uint32_t>& tuple,
                   const std::vector<std::uint32_t>& U, const DegseqContext& ctx) {
    if (tuple.size() != ctx.params.t()) throw std::invalid_argument("tuple length must equal t");
    if (U.size() != ctx.l) throw std::invalid_argument("|U| must equal l");
    for (std::size_t i = 0; i < U.size(); ++i)
        if (tuple[i] != U[i]) throw std::invalid_argument("tuple must extend U in order");
    auto degs = backward_degrees(g, tuple, ctx.l);
    return in_J_gamma(degs, ctx).ok;
}

namespace {

struct PropertyPScan {
    const Graph& g;
    const QuasicliqueParams& p;
    double delta;
    PropertyPReport rep;

    // (s,j) pairs of the two regions; at desk scale region (1) is s = 0 only.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> region_pairs;

    PropertyPScan(const Graph& graph, const QuasicliqueParams& params, double d)
        : g(graph), p(params), delta(d) {
        double cl = p.c_log_n();
        for (std::uint32_t s = 0; s + 1 <= p.t() && s + 1 <= g.order(); ++s) {
            if (double(s) <= cl) {
                for (std::uint32_t j = 0; j <= s; ++j) region_pairs.push_back({s, j});
            }
            if (double(s) >= cl && s <= p.t() - 1) {
                Rational cap = (Rational(1, 2) + p.alpha() * 2) * s;
                for (std::uint32_t j = (s + 1) / 2; Rational(j) <= cap && j <= s; ++j)
                    region_pairs.push_back({s, j});
            }
        }
        std::sort(region_pairs.begin(), region_pairs.end());
        region_pairs.erase(std::unique(region_pairs.begin(), region_pairs.end()), region_pairs.end());
    }

    void record(std::uint32_t s, std::uint32_t j, const Bitset& S, std::optional<std::uint32_t> x,
                std::uint64_t observed, double expected) {
        ++rep.checks;
        double rel = expected == 0.0 ? (observed == 0 ? 0.0 : std::numeric_limits<double>::infinity())
                                     : std::abs(double(observed) / expected - 1.0);
        if (rel > rep.worst.relative) rep.worst = {s, j, S.to_vector(), x, observed, expected, rel};
        if (rel > delta) {
            rep.pass = false;
            ++rep.violations;
        }
    }

    void examine(const Bitset& S, std::uint32_t s) {
        for (auto [rs, j] : region_pairs) {
            if (rs != s) continue;
            auto [mu, omega] = mu_omega(g.order(), s, j);
            auto profile = extension_profile(g, S, j);
            record(s, j, S, std::nullopt, profile.W.count(), mu.get_d());
            for (const auto& [x, wx] : profile.per_x) record(s, j, S, x, wx.count(), omega.get_d());
        }
    }
};

}  // namespace

PropertyPReport check_property_P(const Graph& g, const QuasicliqueParams& p,
                                 const PropertyPOptions& opt) {
    double delta = opt.delta >= 0 ? opt.delta : std::pow(double(g.order()), -0.2);
    PropertyPScan scan(g, p, delta);
    scan.rep.delta = delta;

    std::set<std::uint32_t> sizes;
    for (auto [s, j] : scan.region_pairs) sizes.insert(s);

    const std::uint32_t n = g.order();
    if (n <= opt.exhaustive_limit) {
        scan.rep.exhaustive = true;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::uint32_t s = std::uint32_t(std::popcount(mask));
            if (!sizes.count(s)) continue;
            Bitset S(n);
            for (std::uint32_t v = 0; v < n; ++v)
                if (mask & (1u << v)) S.set(v);
            scan.examine(S, s);
        }
    } else {
        std::vector<std::uint32_t> pool(n);
        for (auto s : sizes) {
            if (s == 0) {
                scan.examine(Bitset(n), 0);
                continue;
            }
            Rng rng(opt.rng.stream(s));
            for (std::uint64_t trial = 0; trial < opt.samples_per_size; ++trial) {
                std::iota(pool.begin(), pool.end(), 0);
                for (std::uint32_t i = 0; i < s; ++i)
                    std::swap(pool[i], pool[i + rng.uniform_below(n - i)]);
                Bitset S(n);
                for (std::uint32_t i = 0; i < s; ++i) S.set(pool[i]);
                scan.examine(S, s);
            }
        }
    }
    return scan.rep;
}

}  // namespace qcover
