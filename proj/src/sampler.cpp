#include "qcover/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcover {

namespace {

void require_edge(const Graph& g, std::pair<std::uint32_t, std::uint32_t> e) {
    if (e.first == e.second || e.first >= g.order() || e.second >= g.order() ||
        !g.has_edge(e.first, e.second))
        throw std::invalid_argument("process anchor must be an edge of the graph");
}

std::uint32_t nth_member(const Bitset& W, std::uint64_t idx) {
    std::uint32_t v = W.next_set(0);
    while (idx-- > 0) v = W.next_set(v + 1);
    return v;
}

}  // namespace

SampledTuple run_process(const Graph& g, std::pair<std::uint32_t, std::uint32_t> e,
                         const std::vector<std::uint32_t>& jseq, Rng& rng) {
    require_edge(g, e);
    SampledTuple out;
    out.vertices = {e.first, e.second};
    Bitset S(g.order());
    S.set(e.first);
    S.set(e.second);
    out.exact_prob = 1;
    for (std::size_t i = 0; i < jseq.size(); ++i) {
        Bitset W = extension_set(g, S, jseq[i]);
        std::uint32_t size = W.count();
        out.path_sizes.push_back(size);
        if (size == 0) {
            out.failed_at = std::uint32_t(2 + i);
            out.exact_prob = 0;
            return out;
        }
        std::uint32_t z = nth_member(W, rng.uniform_below(size));
        out.vertices.push_back(z);
        S.set(z);
        out.exact_prob /= size;
    }
    return out;
}

Rational exact_tuple_probability(const Graph& g, std::pair<std::uint32_t, std::uint32_t> e,
                                 const std::vector<std::uint32_t>& jseq,
                                 const std::vector<std::uint32_t>& tuple) {
    require_edge(g, e);
    if (tuple.size() != jseq.size() + 2) throw std::invalid_argument("tuple length must be |j| + 2");
    if (tuple[0] != e.first || tuple[1] != e.second)
        throw std::invalid_argument("tuple must start with the anchor edge");
    Bitset S(g.order());
    S.set(e.first);
    S.set(e.second);
    Rational prob = 1;
    for (std::size_t i = 0; i < jseq.size(); ++i) {
        Bitset W = extension_set(g, S, jseq[i]);
        if (!W.test(tuple[2 + i]))
            throw std::invalid_argument("tuple is not reachable by the process for this j");
        prob /= W.count();
        S.set(tuple[2 + i]);
    }
    return prob;
}

std::vector<std::vector<std::uint32_t>> enumerate_B_tuples(const Graph& g,
                                                           const std::vector<std::uint32_t>& U,
                                                           const std::vector<std::uint32_t>& jseq,
                                                           const SearchBudget& budget) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> tuple(U);
    Bitset S(g.order());
    for (auto v : U) S.set(v);
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, std::size_t step) -> void {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("tuple enumeration budget exhausted");
        if (step == jseq.size()) {
            out.push_back(tuple);
            return;
        }
        Bitset W = extension_set(g, S, jseq[step]);
        W.for_each([&](std::uint32_t z) {
            tuple.push_back(z);
            S.set(z);
            self(self, step + 1);
            S.reset(z);
            tuple.pop_back();
        });
    };
    rec(rec, 0);
    return out;
}

ProcessDistribution enumerate_process_distribution(const Graph& g,
                                                   std::pair<std::uint32_t, std::uint32_t> e,
                                                   const std::vector<std::uint32_t>& jseq,
                                                   const SearchBudget& budget) {
    require_edge(g, e);
    ProcessDistribution dist;
    dist.failure_prob = 0;
    std::vector<std::uint32_t> tuple = {e.first, e.second};
    Bitset S(g.order());
    S.set(e.first);
    S.set(e.second);
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, std::size_t step, Rational prob) -> void {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("process tree budget exhausted");
        if (step == jseq.size()) {
            dist.tuples.emplace_back(tuple, prob);
            return;
        }
        Bitset W = extension_set(g, S, jseq[step]);
        std::uint32_t size = W.count();
        if (size == 0) {
            dist.failure_prob += prob;
            return;
        }
        Rational next = prob / size;
        W.for_each([&](std::uint32_t z) {
            tuple.push_back(z);
            S.set(z);
            self(self, step + 1, next);
            S.reset(z);
            tuple.pop_back();
        });
    };
    rec(rec, 0, Rational(1));
    return dist;
}

SisEstimate sis_estimate_counts(const Graph& g, const std::vector<std::uint32_t>& U,
                                const Rational& gamma, const QuasicliqueParams& params,
                                std::uint64_t trials, const RandomSource& src,
                                const SearchBudget& budget) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    std::uint32_t l = std::uint32_t(U.size());
    std::uint32_t e_U = 0;
    if (l == 2) {
        if (U[0] == U[1]) throw std::invalid_argument("U has repeated vertices");
        e_U = g.has_edge(U[0], U[1]) ? 1 : 0;
    }
    DegseqContext ctx = make_degseq_context(params, gamma, l, e_U);
    auto jfam = enumerate_J_gamma(ctx, budget);

    SisEstimate est;
    est.j_family_size = jfam.size();
    if (jfam.empty()) {
        // No admissible sequences means B itself is empty, exactly.
        est.trials = trials;
        return est;
    }

    struct Acc {
        KahanSum sum, sumsq;
        std::uint64_t count = 0;
        void add(double w) {
            sum.add(w);
            sumsq.add(w * w);
            ++count;
        }
        double mean() const { return count ? sum.value() / double(count) : 0.0; }
        double std_error() const {
            if (count < 2) return 0.0;
            double m = mean();
            double var = std::max(0.0, sumsq.value() / double(count) - m * m);
            return std::sqrt(var / double(count));
        }
    };
    Acc b_all, q_all;
    std::vector<Acc> b_per(jfam.size()), q_per(jfam.size());
    std::vector<std::uint64_t> fail_per(jfam.size(), 0);

    Bitset Uset(g.order());
    for (auto v : U) Uset.set(v);

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(src.stream(trial));
        std::size_t ji = std::size_t(rng.uniform_below(jfam.size()));
        const auto& jseq = jfam[ji];

        // Run the process from the (possibly empty) anchor.
        std::vector<std::uint32_t> tuple(U);
        Bitset S = Uset;
        double path_product = 1.0;
        bool failed = false;
        for (std::size_t i = 0; i < jseq.size(); ++i) {
            Bitset W = extension_set(g, S, jseq[i]);
            std::uint32_t size = W.count();
            if (size == 0) {
                failed = true;
                break;
            }
            std::uint32_t z = nth_member(W, rng.uniform_below(size));
            tuple.push_back(z);
            S.set(z);
            path_product *= double(size);
        }

        double bw = 0.0, qw = 0.0;
        if (!failed) {
            bw = path_product;
            qw = is_quasiclique(g, S, params).ok ? path_product : 0.0;
        } else {
            ++est.failures;
            ++fail_per[ji];
        }
        b_all.add(bw * double(jfam.size()));
        q_all.add(qw * double(jfam.size()));
        b_per[ji].add(bw);
        q_per[ji].add(qw);
    }

    est.trials = trials;
    est.b_estimate = b_all.mean();
    est.b_std_error = b_all.std_error();
    est.q_estimate = q_all.mean();
    est.q_std_error = q_all.std_error();
    for (std::size_t i = 0; i < jfam.size(); ++i) {
        SisPerJ pj;
        pj.jseq = jfam[i];
        pj.trials = b_per[i].count;
        pj.failures = fail_per[i];
        pj.b_estimate = b_per[i].mean();
        pj.b_std_error = b_per[i].std_error();
        pj.q_estimate = q_per[i].mean();
        pj.q_std_error = q_per[i].std_error();
        est.per_j.push_back(std::move(pj));
    }
    return est;
}

std::uint32_t measure_ds(const Graph& g, const std::vector<std::uint32_t>& tuple, std::uint32_t s) {
    if (s < 1 || s > tuple.size()) throw std::out_of_range("s must lie in 1..t");
    Bitset set(g.order());
    for (auto v : tuple) set.set(v);
    return g.neighbors(tuple[s - 1]).intersection_count(set);
}

FractionEstimate sample_T_gamma_fraction(const QuasicliqueParams& params, const Rational& gamma,
                                         std::uint64_t trials, const RandomSource& src,
                                         std::uint64_t exact_threshold) {
    const std::uint32_t t = params.t();
    const std::uint64_t T = params.T();
    if (T < 1) throw std::invalid_argument("T must be at least 1 to contain the anchor edge");
    DegseqContext ctx = make_degseq_context(params, gamma, 2, 1);

    // Pairs on [t] except the anchor {0,1}.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t u = 0; u < t; ++u)
        for (std::uint32_t v = u + 1; v < t; ++v)
            if (!(u == 0 && v == 1)) pairs.push_back({u, v});
    const std::uint64_t P = pairs.size();
    const std::uint64_t pick = T - 1;

    auto member = [&](const std::vector<std::uint32_t>& chosen_pairs) {
        Graph k(t);
        k.add_edge(0, 1);
        for (auto pi : chosen_pairs) k.add_edge(pairs[pi].first, pairs[pi].second);
        std::vector<std::uint32_t> identity(t);
        std::iota(identity.begin(), identity.end(), 0);
        return in_J_gamma(backward_degrees(k, identity, 2), ctx).ok;
    };

    FractionEstimate out;
    Integer population = binomial(P, std::int64_t(pick));
    if (population <= exact_threshold) {
        // Walk all (T-1)-subsets of the remaining pairs.
        std::uint64_t members = 0, total = 0;
        std::vector<std::uint32_t> chosen(pick);
        auto rec = [&](auto&& self, std::uint64_t pos, std::uint32_t from) -> void {
            if (pos == pick) {
                ++total;
                if (member(chosen)) ++members;
                return;
            }
            for (std::uint32_t i = from; i + (pick - pos) <= P; ++i) {
                chosen[pos] = i;
                self(self, pos + 1, i + 1);
            }
        };
        rec(rec, 0, 0);
        out.exact = true;
        out.exact_fraction = total ? Rational(members, total) : Rational(0);
        out.fraction = out.exact_fraction.get_d();
        out.trials = total;
        return out;
    }

    if (trials < 1) throw std::invalid_argument("need at least one trial");
    std::vector<std::uint32_t> pool(P);
    std::uint64_t members = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(src.stream(trial));
        std::iota(pool.begin(), pool.end(), 0);
        for (std::uint64_t i = 0; i < pick; ++i)
            std::swap(pool[i], pool[i + rng.uniform_below(P - i)]);
        std::vector<std::uint32_t> chosen(pool.begin(), pool.begin() + pick);
        if (member(chosen)) ++members;
    }
    out.trials = trials;
    out.fraction = double(members) / double(trials);
    out.std_error = std::sqrt(out.fraction * (1.0 - out.fraction) / double(trials));
    return out;
}

FractionEstimate permutation_admissible_fraction(const Graph& g, const Bitset& Q,
                                                 std::pair<std::uint32_t, std::uint32_t> e,
                                                 const QuasicliqueParams& params, std::uint64_t trials,
                                                 const RandomSource& src, std::uint64_t exact_threshold) {
    require_edge(g, e);
    if (!Q.test(e.first) || !Q.test(e.second)) throw std::invalid_argument("Q must contain the edge");
    if (!is_quasiclique(g, Q, params).ok)
        throw std::invalid_argument("Q is not an alpha-quasiclique of the graph");

    DegseqContext ctx = make_degseq_context(params, params.alpha(), 2, 1);
    std::vector<std::uint32_t> U = {e.first, e.second};
    std::vector<std::uint32_t> rest;
    Q.for_each([&](std::uint32_t v) {
        if (v != e.first && v != e.second) rest.push_back(v);
    });
    std::sort(rest.begin(), rest.end());

    auto admissible = [&](const std::vector<std::uint32_t>& order) {
        std::vector<std::uint32_t> tuple = U;
        tuple.insert(tuple.end(), order.begin(), order.end());
        return is_admissible(g, tuple, U, ctx);
    };

    FractionEstimate out;
    Integer population = factorial(rest.size());
    if (population <= exact_threshold) {
        std::uint64_t members = 0, total = 0;
        std::vector<std::uint32_t> order = rest;
        do {
            ++total;
            if (admissible(order)) ++members;
        } while (std::next_permutation(order.begin(), order.end()));
        out.exact = true;
        out.exact_fraction = Rational(members, total);
        out.fraction = out.exact_fraction.get_d();
        out.trials = total;
        return out;
    }

    if (trials < 1) throw std::invalid_argument("need at least one trial");
    std::uint64_t members = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(src.stream(trial));
        std::vector<std::uint32_t> order = rest;
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
            std::swap(order[i], order[i + rng.uniform_below(order.size() - i)]);
        if (admissible(order)) ++members;
    }
    out.trials = trials;
    out.fraction = double(members) / double(trials);
    out.std_error = std::sqrt(out.fraction * (1.0 - out.fraction) / double(trials));
    return out;
}

}  // namespace qcover
