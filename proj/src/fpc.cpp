#include "qcover/fpc.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "qcover/p1.hpp"

namespace qcover {

namespace {

Rational p1_term(const Rational& x, const Rational& x0) { return rational_pow(x, 3) - rational_pow(x, 4) / x0; }
Rational p2_term(const Rational& x) { return rational_pow(x, 3) + rational_pow(x, 4) / 2; }

}  // namespace

Rational Fpc::weight() const {
    Rational w = 0;
    for (const auto& item : items) w += item.w;
    return w;
}

std::vector<std::size_t> Fpc::large_items() const {
    std::vector<std::size_t> out;
    Rational bound = x0();
    for (std::size_t i = 0; i < items.size(); ++i)
        if (items[i].x > bound && items[i].w > 0) out.push_back(i);
    return out;
}

std::string Fpc::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["items"] = nlohmann::json::array();
    for (const auto& item : items)
        j["items"].push_back({{"x", to_string(item.x)}, {"w", to_string(item.w)}});
    return j.dump(2);
}

Fpc Fpc::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Fpc a;
    a.n = j.at("n").get<std::uint32_t>();
    a.k = j.at("k").get<std::uint32_t>();
    auto field = [](const nlohmann::json& v) {
        if (v.is_string()) return rational_from_string(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        throw std::invalid_argument("FPC fields must be integers or rational strings like \"3/4\"");
    };
    for (const auto& item : j.at("items")) a.items.push_back({field(item.at("x")), field(item.at("w"))});
    for (const auto& item : a.items) {
        if (item.x <= 0) throw std::invalid_argument("FPC x values must be positive");
        if (item.w < 0) throw std::invalid_argument("FPC weights must be non-negative");
    }
    return a;
}

double p2_threshold(std::uint32_t n, std::uint32_t k) {
    double d = 9.0 * std::log(double(n));
    return double(k) * double(n) * double(n) / (3.0 * d * d);
}

double weight_lower_bound(std::uint32_t n, std::uint32_t k) {
    if (n < 3 || k < 2) throw std::invalid_argument("weight lower bound needs n >= 3, k >= 2");
    double x0 = 8.0 * k - 2.0;
    return p2_threshold(n, k) / (x0 * x0 * x0 * x0);
}

FpcEval check_fpc(const Fpc& a) {
    FpcEval eval;
    eval.p1_sum = 0;
    eval.p2_sum = 0;
    Rational x0 = a.x0();
    for (const auto& item : a.items) {
        eval.p1_sum += item.w * p1_term(item.x, x0);
        eval.p2_sum += item.w * p2_term(item.x);
    }
    eval.p2_threshold = p2_threshold(a.n, a.k);
    eval.p1_ok = eval.p1_sum >= 0;
    eval.p2_ok = eval.p2_sum.get_d() >= eval.p2_threshold;
    return eval;
}

BalanceResult balance_large_item(const Fpc& a, std::size_t m_index) {
    if (m_index >= a.items.size()) throw std::out_of_range("item index");
    const Rational x0 = a.x0();
    const FpcItem& large = a.items[m_index];
    if (!(large.x > x0)) throw std::invalid_argument("item is not large (x <= x0)");
    if (!(large.w > 0)) throw std::invalid_argument("item carries no weight");

    // The amount the small side must contribute.
    Rational need = -(large.w * p1_term(large.x, x0));
    if (need <= 0) throw std::logic_error("large item term should be strictly negative");

    // Small items sorted by per-unit contribution, largest first, so S stays
    // as small as possible.
    struct SmallRef {
        std::size_t index;
        Rational per_unit;
        Rational capacity;  // w_i * per_unit
    };
    std::vector<SmallRef> small;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        if (i == m_index) continue;
        const auto& item = a.items[i];
        if (item.x > x0 || item.w <= 0) continue;
        Rational per = p1_term(item.x, x0);
        if (per <= 0) continue;  // x == x0 contributes nothing
        small.push_back({i, per, item.w * per});
    }
    std::sort(small.begin(), small.end(), [](const SmallRef& l, const SmallRef& r) {
        if (l.per_unit != r.per_unit) return l.per_unit > r.per_unit;
        return l.index < r.index;
    });

    Rational available = 0;
    std::size_t take = 0;
    while (take < small.size() && available < need) available += small[take++].capacity;
    if (available < need)
        throw NoSmallMass("small items cannot balance the large term; (P1) must have failed");

    BalanceResult result;
    result.lambda = need / available;
    for (std::size_t i = 0; i < take; ++i)
        result.beta.emplace_back(small[i].index, result.lambda * a.items[small[i].index].w);
    return result;
}

std::string EliminationTrace::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& it : iterations) {
        nlohmann::json step;
        step["large_index"] = it.large_index;
        step["x_m"] = to_string(it.x_m);
        step["w_m"] = to_string(it.w_m);
        step["lambda"] = to_string(it.balance.lambda);
        step["S"] = nlohmann::json::array();
        for (const auto& [idx, beta] : it.balance.beta)
            step["S"].push_back({{"index", idx}, {"beta", to_string(beta)}});
        step["M"] = to_string(it.M);
        step["merged_weight"] = to_string(it.merged_weight);
        step["p1_sum"] = to_string(it.p1_sum);
        step["p2_sum"] = to_string(it.p2_sum);
        step["weight"] = to_string(it.weight);
        step["cubes_ok"] = it.cubes_ok;
        step["fourths_ok"] = it.fourths_ok;
        j.push_back(step);
    }
    return j.dump(2);
}

std::pair<Fpc, EliminationTrace> eliminate_large(const Fpc& a) {
    FpcEval initial = check_fpc(a);
    if (!initial.p1_ok) throw std::invalid_argument("(P1) must hold before elimination");
    if (!initial.p2_ok) throw std::invalid_argument("(P2) must hold before elimination");

    Fpc current = a;
    EliminationTrace trace;
    const Rational x0 = a.x0();
    Rational weight_before = current.weight();
    Rational p1_before = initial.p1_sum;
    Rational p2_before = initial.p2_sum;

    while (true) {
        auto large = current.large_items();
        if (large.empty()) break;
        // Deterministic order: largest x first.
        std::size_t m = large[0];
        for (auto idx : large)
            if (current.items[idx].x > current.items[m].x) m = idx;

        EliminationIteration iter;
        iter.large_index = m;
        iter.x_m = current.items[m].x;
        iter.w_m = current.items[m].w;
        iter.balance = balance_large_item(current, m);

        Rational beta_sum = 0;
        Rational M = iter.w_m * rational_pow(iter.x_m, 3);
        Rational M4 = iter.w_m * rational_pow(iter.x_m, 4);
        for (const auto& [idx, beta] : iter.balance.beta) {
            beta_sum += beta;
            M += beta * rational_pow(current.items[idx].x, 3);
            M4 += beta * rational_pow(current.items[idx].x, 4);
        }
        iter.M = M;
        if (M * x0 != M4) throw std::logic_error("balancing identity M x0 == sum beta x^4 violated");
        iter.merged_weight = iter.w_m + beta_sum;

        // Power-mean consequences; theorems, so a failure is a bug.
        iter.cubes_ok = iter.merged_weight * rational_pow(x0, 3) >= M;
        iter.fourths_ok = iter.merged_weight * rational_pow(x0, 4) >= M * x0;
        if (!iter.cubes_ok || !iter.fourths_ok)
            throw std::logic_error("power-mean inequality violated during elimination");

        for (const auto& [idx, beta] : iter.balance.beta) current.items[idx].w -= beta;
        current.items[m].w = 0;
        current.items.push_back({x0, iter.merged_weight});

        FpcEval eval = check_fpc(current);
        iter.p1_sum = eval.p1_sum;
        iter.p2_sum = eval.p2_sum;
        iter.weight = current.weight();
        if (iter.p1_sum != p1_before) throw std::logic_error("(P1) sum not conserved exactly");
        if (iter.p2_sum < p2_before) throw std::logic_error("(P2) sum decreased");
        if (iter.weight != weight_before) throw std::logic_error("weight not conserved exactly");
        p2_before = iter.p2_sum;
        trace.iterations.push_back(std::move(iter));

        if (trace.iterations.size() > a.items.size())
            throw std::logic_error("elimination failed to terminate in |L| iterations");
    }

    // Canonical output: drop zero weights, merge equal x, sort by x desc.
    Fpc out;
    out.n = current.n;
    out.k = current.k;
    for (const auto& item : current.items)
        if (item.w > 0) out.items.push_back(item);
    std::sort(out.items.begin(), out.items.end(),
              [](const FpcItem& l, const FpcItem& r) { return l.x > r.x; });
    std::vector<FpcItem> merged;
    for (const auto& item : out.items) {
        if (!merged.empty() && merged.back().x == item.x)
            merged.back().w += item.w;
        else
            merged.push_back(item);
    }
    out.items = std::move(merged);
    if (out.weight() != weight_before) throw std::logic_error("weight changed while canonicalizing");
    return {std::move(out), std::move(trace)};
}

namespace {

// Directed-rounding scalar for the converted-cover sums. All intermediate
// quantities are positive; the sign enters only at the final subtraction.
class MpfrScope {
public:
    explicit MpfrScope(mpfr_prec_t prec) : prec_(prec) {}
    ~MpfrScope() { mpfr_free_cache(); }
    mpfr_prec_t prec() const { return prec_; }

private:
    mpfr_prec_t prec_;
};

struct ConvertedSums {
    double p1_lo, p1_hi, p2_lo, p2_hi, thr_lo, thr_hi;
    double max_rel_width;
};

ConvertedSums converted_sums(const std::vector<std::uint64_t>& sizes, std::uint32_t n, std::uint32_t k) {
    const mpfr_prec_t prec = 192;
    MpfrScope scope(prec);
    mpfr_t log_n[2], nine_log_n[2], x2[2], x3[2], x4[2], term[2], p1[2], p2[2], thr[2], tmp;
    for (int d = 0; d < 2; ++d) {
        mpfr_inits2(prec, log_n[d], nine_log_n[d], x2[d], x3[d], x4[d], term[d], p1[d], p2[d], thr[d],
                    (mpfr_ptr)nullptr);
        mpfr_set_zero(p1[d], 1);
        mpfr_set_zero(p2[d], 1);
    }
    mpfr_init2(tmp, prec);
    const mpfr_rnd_t R[2] = {MPFR_RNDD, MPFR_RNDU};
    // A lower bound for a ratio needs numerator down and denominator up.
    mpfr_set_ui(tmp, n, MPFR_RNDN);
    mpfr_log(log_n[0], tmp, MPFR_RNDD);
    mpfr_log(log_n[1], tmp, MPFR_RNDU);
    for (int d = 0; d < 2; ++d) mpfr_mul_ui(nine_log_n[d], log_n[d], 9, R[d]);

    const double x0 = 8.0 * k - 2.0;
    for (auto size : sizes) {
        for (int d = 0; d < 2; ++d) {
            int o = 1 - d;
            // x^2 = size / (9 ln n): direction d needs the other rounding below.
            mpfr_ui_div(x2[d], size, nine_log_n[o], R[d]);
            mpfr_sqrt(tmp, x2[d], R[d]);
            mpfr_mul(x3[d], x2[d], tmp, R[d]);  // x^3 = x^2 * x
            mpfr_sqr(x4[d], x2[d], R[d]);       // x^4 = (x^2)^2
        }
        // P1 term: x^3 - x^4/x0, both parts positive.
        mpfr_div_d(term[0], x4[1], x0, MPFR_RNDU);
        mpfr_sub(term[0], x3[0], term[0], MPFR_RNDD);
        mpfr_add(p1[0], p1[0], term[0], MPFR_RNDD);
        mpfr_div_d(term[1], x4[0], x0, MPFR_RNDD);
        mpfr_sub(term[1], x3[1], term[1], MPFR_RNDU);
        mpfr_add(p1[1], p1[1], term[1], MPFR_RNDU);
        // P2 term: x^3 + x^4/2.
        for (int d = 0; d < 2; ++d) {
            mpfr_div_ui(term[d], x4[d], 2, R[d]);
            mpfr_add(term[d], term[d], x3[d], R[d]);
            mpfr_add(p2[d], p2[d], term[d], R[d]);
        }
    }
    // Threshold k n^2 / (3 (9 ln n)^2).
    for (int d = 0; d < 2; ++d) {
        int o = 1 - d;
        mpfr_sqr(term[d], nine_log_n[o], R[o]);
        mpfr_mul_ui(term[d], term[d], 3, R[o]);
        mpfr_set_ui(thr[d], n, MPFR_RNDN);
        mpfr_sqr(thr[d], thr[d], R[d]);
        mpfr_mul_ui(thr[d], thr[d], k, R[d]);
        mpfr_div(thr[d], thr[d], term[d], R[d]);
    }

    ConvertedSums out;
    out.p1_lo = mpfr_get_d(p1[0], MPFR_RNDD);
    out.p1_hi = mpfr_get_d(p1[1], MPFR_RNDU);
    out.p2_lo = mpfr_get_d(p2[0], MPFR_RNDD);
    out.p2_hi = mpfr_get_d(p2[1], MPFR_RNDU);
    out.thr_lo = mpfr_get_d(thr[0], MPFR_RNDD);
    out.thr_hi = mpfr_get_d(thr[1], MPFR_RNDU);
    auto rel = [](double lo, double hi) {
        double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
        return (hi - lo) / scale;
    };
    out.max_rel_width = std::max({rel(out.p1_lo, out.p1_hi), rel(out.p2_lo, out.p2_hi),
                                  rel(out.thr_lo, out.thr_hi)});
    for (int d = 0; d < 2; ++d)
        mpfr_clears(log_n[d], nine_log_n[d], x2[d], x3[d], x4[d], term[d], p1[d], p2[d], thr[d],
                    (mpfr_ptr)nullptr);
    mpfr_clear(tmp);
    return out;
}

}  // namespace

std::string ConvertedFpc::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["items"] = nlohmann::json::array();
    for (std::size_t i = 0; i < sizes.size(); ++i)
        j["items"].push_back({{"size", sizes[i]}, {"x", x_approx[i]}, {"w", 1}});
    j["p1_sum"] = {{"lo", p1_sum.lo}, {"hi", p1_sum.hi}};
    j["p2_sum"] = {{"lo", p2_sum.lo}, {"hi", p2_sum.hi}};
    j["p2_threshold"] = {{"lo", threshold.lo}, {"hi", threshold.hi}};
    j["p1_verdict"] = p1_verdict;
    j["p2_verdict"] = p2_verdict;
    j["graph_p1_warning"] = graph_p1_warning;
    j["regime_warning"] = regime_warning;
    return j.dump(2);
}

ConvertedFpc cover_to_fpc(const Graph& g, const CoverMultiset& c, std::uint32_t k) {
    auto cert = is_k_cover(g, c, k);
    if (!cert.valid) throw std::invalid_argument("cover must certify as a k-cover before conversion");

    ConvertedFpc out;
    out.n = g.order();
    out.k = k;
    double nine_log_n = 9.0 * std::log(double(g.order()));
    for (const auto& [set, mult] : c.entries()) {
        if (set.count() == 0)
            throw std::invalid_argument("cover contains an empty set; conversion needs x_i > 0");
        for (std::uint64_t copy = 0; copy < mult; ++copy) {
            out.sizes.push_back(set.count());
            out.x_approx.push_back(std::sqrt(double(set.count()) / nine_log_n));
        }
    }

    ConvertedSums sums = converted_sums(out.sizes, out.n, out.k);
    if (sums.max_rel_width >= 1e-12)
        throw std::logic_error("interval evaluation lost precision beyond 1e-12");
    out.p1_sum = {sums.p1_lo, sums.p1_hi};
    out.p2_sum = {sums.p2_lo, sums.p2_hi};
    out.threshold = {sums.thr_lo, sums.thr_hi};
    out.p1_verdict = sums.p1_lo >= 0 ? +1 : (sums.p1_hi < 0 ? -1 : 0);
    out.p2_verdict = sums.p2_lo >= sums.thr_hi ? +1 : (sums.p2_hi < sums.thr_lo ? -1 : 0);

    // Desk-scale caveats from the paper's regime conditions, surfaced as
    // warnings rather than errors.
    P1Options p1opt;
    p1opt.exhaustive_limit = 16;
    p1opt.samples_per_size = 2000;
    out.graph_p1_warning = !check_property_p1(g, p1opt).pass;
    double lhs = 3.0 * std::sqrt(std::log(double(g.order())) / double(g.order()));
    out.regime_warning = !(lhs < 1.0 / (8.0 * k - 6.0));
    return out;
}

Fpc random_fpc(const RandomSource& src, const RandomFpcOptions& opt) {
    Rng rng(src);
    Fpc a;
    a.k = 2 + std::uint32_t(rng.uniform_below(4));
    a.n = 20 + std::uint32_t(rng.uniform_below(300));
    Rational x0 = a.x0();
    const std::uint64_t x0_int = 8ull * a.k - 2;

    auto random_rational = [&](std::uint64_t num_range, std::uint64_t den_range) {
        std::uint64_t den = 1 + rng.uniform_below(den_range);
        std::uint64_t num = 1 + rng.uniform_below(num_range * den);
        return Rational(num, den);
    };

    std::uint32_t n_large =
        opt.min_large + std::uint32_t(rng.uniform_below(opt.max_large - opt.min_large + 1));
    for (std::uint32_t i = 0; i < n_large; ++i) {
        Rational x = x0 + random_rational(2 * x0_int, 4);  // x in (x0, 3 x0]
        a.items.push_back({x, random_rational(16, 16) / 16});
    }
    for (std::uint32_t i = 0; i < opt.small_items; ++i) {
        Rational x = random_rational(x0_int / 2 + 1, 4);  // x in (0, x0]
        if (x > x0) x = x0;
        a.items.push_back({x, random_rational(16, 16) / 16});
    }

    // Top up with mass at x0/2 until (P1) and (P2) hold with slack. Each such
    // item adds x0^3/16 to the (P1) sum and x0^3/8 + x0^4/32 to the (P2) sum.
    Rational filler_x = x0 / 2;
    Rational p1_add = p1_term(filler_x, x0);
    Rational p2_add = p2_term(filler_x);
    FpcEval eval = check_fpc(a);
    Rational thr_with_margin(std::int64_t(std::ceil(eval.p2_threshold * 1.25)) + 1);
    while (eval.p1_sum < 0 || eval.p2_sum < thr_with_margin) {
        Integer deficit_steps = 1;
        if (eval.p1_sum < 0) {
            Rational needed = -eval.p1_sum / p1_add;
            deficit_steps = needed.get_num() / needed.get_den() + 1;
        }
        if (eval.p2_sum < thr_with_margin) {
            Rational needed = (thr_with_margin - eval.p2_sum) / p2_add;
            Integer steps = needed.get_num() / needed.get_den() + 1;
            if (steps > deficit_steps) deficit_steps = steps;
        }
        std::uint64_t add = deficit_steps.get_ui();
        for (std::uint64_t i = 0; i < add; ++i) a.items.push_back({filler_x, 1});
        eval = check_fpc(a);
    }
    return a;
}

}  // namespace qcover
