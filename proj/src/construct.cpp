#include "qcover/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qcover {

std::string ConstructionTrace::to_json(bool include_covers) const {
    nlohmann::json j;
    j["q"] = to_string(q);
    j["q_approx"] = q.get_d();
    j["k"] = k;
    j["X"] = X;
    j["Y"] = Y;
    j["Z"] = Z;
    j["E1"] = E1;
    j["E2"] = E2;
    j["added_edge_copies"] = added_edge_copies;
    j["removed_elements"] = removed_elements;
    j["initial_size"] = c_initial.size();
    j["after_step1_size"] = c_1.size();
    j["final_size"] = c_final.size();
    j["certificate"] = nlohmann::json::parse(certificate.to_json());
    if (include_covers) {
        auto dump = [](const CoverMultiset& c) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& [set, mult] : c.entries())
                arr.push_back({{"mult", mult}, {"vertices", set.to_vector()}});
            return arr;
        };
        j["c_initial"] = dump(c_initial);
        j["c_1"] = dump(c_1);
        j["c_final"] = dump(c_final);
    }
    return j.dump(2);
}

Rational selection_probability(const QuasicliqueParams& params, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    Rational n1 = expected_count(params, 2, 1);
    if (n1 <= 0) throw InfeasibleRegime("N1 = 0: no quasicliques can contain an edge");
    Rational q = Rational(k) * (1 + params.alpha()) / n1;
    if (q >= 1)
        throw InfeasibleRegime("selection probability q = " + to_string(q) +
                               " >= 1; n is too small for these parameters");
    return q;
}

CoverMultiset sample_candidate_cover(const Graph& g, const QuasicliqueParams& params, std::uint32_t k,
                                     Rng& rng, const SearchBudget& budget) {
    Rational q = selection_probability(params, k);
    double qd = q.get_d();
    auto members = enumerate_Q(g, {}, params, budget);
    CoverMultiset c(g.order());
    for (const auto& member : members)
        if (rng.next_double() < qd) c.add(member);
    return c;
}

DefectStats defect_stats(const Graph& g, const CoverMultiset& c, std::uint32_t k) {
    DefectStats stats;
    const double k_log_n = double(k) * std::log(double(g.order()));
    for (std::uint32_t u = 0; u < g.order(); ++u) {
        for (std::uint32_t v = u + 1; v < g.order(); ++v) {
            std::uint64_t cov = c.coverage(u, v);
            if (g.has_edge(u, v)) {
                if (cov < k) ++stats.X;
            } else {
                if (cov >= k) ++stats.Y;
                if (double(cov) > k_log_n) ++stats.Z;
            }
        }
    }
    return stats;
}

ConstructionTrace repair(const Graph& g, const CoverMultiset& c, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    ConstructionTrace trace;
    trace.k = k;
    trace.q = 0;
    trace.c_initial = c;
    DefectStats stats = defect_stats(g, c, k);
    trace.X = stats.X;
    trace.Y = stats.Y;
    trace.Z = stats.Z;

    // Step 1: drop every member containing some non-edge covered >= k times,
    // with multiplicity.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bad_non_edges;
    for (std::uint32_t u = 0; u < g.order(); ++u)
        for (std::uint32_t v = u + 1; v < g.order(); ++v)
            if (!g.has_edge(u, v) && c.coverage(u, v) >= k) bad_non_edges.push_back({u, v});

    trace.c_1 = CoverMultiset(g.order());
    std::uint32_t max_removed_size = 0;
    std::vector<Bitset> removed_edge_rows(g.order(), Bitset(g.order()));
    for (const auto& [set, mult] : c.entries()) {
        bool removed = false;
        for (const auto& [u, v] : bad_non_edges)
            if (set.test(u) && set.test(v)) {
                removed = true;
                break;
            }
        if (!removed) {
            trace.c_1.add(set, mult);
        } else {
            trace.removed_elements += mult;
            max_removed_size = std::max(max_removed_size, set.count());
            // Track which edges lost coverage for the E1 count.
            auto vs = set.to_vector();
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t jj = i + 1; jj < vs.size(); ++jj)
                    if (g.has_edge(vs[i], vs[jj])) removed_edge_rows[vs[i]].set(vs[jj]);
        }
    }
    for (std::uint32_t u = 0; u < g.order(); ++u) trace.E1 += removed_edge_rows[u].count();

    // Step 2: k copies of every edge still deficient.
    trace.c_final = trace.c_1;
    for (std::uint32_t u = 0; u < g.order(); ++u) {
        for (std::uint32_t v = u + 1; v < g.order(); ++v) {
            if (!g.has_edge(u, v)) continue;
            if (trace.c_1.coverage(u, v) < k) {
                ++trace.E2;
                trace.c_final.add(Bitset::of(g.order(), {u, v}), k);
            }
        }
    }
    trace.added_edge_copies = k * trace.E2;

    // Paper accounting, checked on every trace.
    if (trace.E1 > std::uint64_t(max_removed_size) * max_removed_size * trace.removed_elements)
        throw std::logic_error("E1 exceeds its s_max^2 * removed bound");
    if (trace.E2 > trace.X + trace.E1) throw std::logic_error("E2 exceeds X + E1");
    if (trace.c_final.size() > c.size() + trace.added_edge_copies)
        throw std::logic_error("final cover exceeds |C| + k*E2");

    trace.certificate = is_k_cover(g, trace.c_final, k);
    if (!trace.certificate.valid) throw std::logic_error("repair produced an invalid k-cover");
    return trace;
}

PipelineResult pipeline(const Graph& g, std::uint32_t k, const PipelineOptions& opt) {
    const std::uint32_t n = g.order();
    const double log_n = std::log(double(n));

    Rational alpha;
    std::uint32_t t = 0;
    double ideal_t = 0.0;
    bool regime_ok = true;

    if (opt.alpha_override && opt.t_override) {
        alpha = *opt.alpha_override;
        t = *opt.t_override;
        ideal_t = double(t);
    } else if (opt.epsilon) {
        double eps = *opt.epsilon;
        if (eps <= 0 || eps >= 0.5) throw std::invalid_argument("epsilon must lie in (0, 1/2)");
        double alpha_d = std::pow(double(k), -0.5 + eps);
        ideal_t = QuasicliqueParams::c_const() * log_n / (alpha_d * alpha_d);
        long t_rounded = std::lround(ideal_t);
        if (t_rounded < 2)
            throw InfeasibleRegime("derived t = " + std::to_string(ideal_t) +
                                   " rounds below 2; n is far below the paper regime");
        t = std::uint32_t(t_rounded);
        // Nearest alpha with integral T for this t, keeping alpha in (0, 1/2].
        std::uint64_t pairs = std::uint64_t(t) * (t - 1) / 2;
        double T_real = (0.5 + alpha_d) * double(pairs);
        std::int64_t T_int = std::llround(T_real);
        std::int64_t T_min = std::int64_t(pairs / 2) + 1;  // alpha > 0
        T_int = std::clamp<std::int64_t>(T_int, T_min, std::int64_t(pairs));
        alpha = Rational(T_int, pairs) - Rational(1, 2);
        // Regime flags (reported, not enforced).
        double loglog = std::log(log_n);
        regime_ok = loglog > 0 && double(k) >= std::pow(loglog, 1.0 / eps) && double(k) <= log_n;
    } else {
        throw std::invalid_argument("pipeline needs either epsilon or an (alpha, t) override");
    }

    QuasicliqueParams params = QuasicliqueParams::make(n, alpha, t);

    PipelineResult result{ConstructionTrace{}, params, alpha, ideal_t, regime_ok, 0};
    Rational q = selection_probability(params, k);  // throws when infeasible

    bool have = false;
    std::uint32_t retries = std::max<std::uint32_t>(1, opt.retries);
    for (std::uint32_t attempt = 0; attempt < retries; ++attempt) {
        Rng rng(opt.rng.stream(attempt));
        CoverMultiset candidate = sample_candidate_cover(g, params, k, rng, opt.budget);
        ConstructionTrace trace = repair(g, candidate, k);
        trace.q = q;
        ++result.retries_run;
        auto key = [](const ConstructionTrace& tr) { return std::make_tuple(tr.X, tr.Y, tr.Z); };
        if (!have || key(trace) < key(result.trace)) {
            result.trace = std::move(trace);
            have = true;
        }
    }
    return result;
}

}  // namespace qcover
