#include "qcover/exact_cover.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

namespace qcover {

namespace {

// Pair-indexed incidence masks for one candidate subset.
struct Candidate {
    Bitset vertices;
    std::uint32_t size = 0;
    std::uint64_t edge_mask = 0;      // edges of G inside the set
    std::uint64_t non_edge_mask = 0;  // non-edges of G inside the set
};

struct Instance {
    const Graph& g;
    std::uint32_t k;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> non_edges;
    std::vector<Candidate> candidates;               // sorted by decreasing size
    std::vector<std::vector<std::uint32_t>> by_edge; // edge index -> candidate indices

    explicit Instance(const Graph& graph, std::uint32_t kk) : g(graph), k(kk) {
        const std::uint32_t n = g.order();
        if (n > 8) throw std::invalid_argument("exact solver supports n <= 8");
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                (g.has_edge(u, v) ? edges : non_edges).push_back({u, v});

        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            if (std::popcount(mask) < 2) continue;  // covers no pair
            Candidate c;
            c.vertices = Bitset(n);
            for (std::uint32_t v = 0; v < n; ++v)
                if (mask & (1u << v)) c.vertices.set(v);
            c.size = c.vertices.count();
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (c.vertices.test(edges[i].first) && c.vertices.test(edges[i].second))
                    c.edge_mask |= std::uint64_t(1) << i;
            for (std::size_t i = 0; i < non_edges.size(); ++i)
                if (c.vertices.test(non_edges[i].first) && c.vertices.test(non_edges[i].second))
                    c.non_edge_mask |= std::uint64_t(1) << i;
            candidates.push_back(std::move(c));
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& a, const Candidate& b) { return a.size > b.size; });
        by_edge.assign(edges.size(), {});
        for (std::uint32_t ci = 0; ci < candidates.size(); ++ci)
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (candidates[ci].edge_mask & (std::uint64_t(1) << e)) by_edge[e].push_back(ci);
    }
};

struct Search {
    const Instance& inst;
    const SearchBudget& budget;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;
    std::vector<int> deficiency;        // per edge: k - coverage (may go negative)
    std::vector<int> slack;             // per non-edge: (k-1) - coverage
    std::vector<std::uint32_t> chosen;  // candidate indices on the current path
    std::vector<std::uint32_t> solution;
    bool found = false;

    Search(const Instance& i, const SearchBudget& b) : inst(i), budget(b) {
        deficiency.assign(inst.edges.size(), int(inst.k));
        slack.assign(inst.non_edges.size(), int(inst.k) - 1);
    }

    int most_deficient_edge() const {
        int best = -1, best_def = 0;
        for (std::size_t e = 0; e < deficiency.size(); ++e)
            if (deficiency[e] > best_def) {
                best_def = deficiency[e];
                best = int(e);
            }
        return best;
    }

    bool admissible(const Candidate& c) const {
        for (std::uint64_t m = c.non_edge_mask; m;) {
            int f = std::countr_zero(m);
            m &= m - 1;
            if (slack[f] <= 0) return false;
        }
        return true;
    }

    void apply(const Candidate& c, int dir) {
        for (std::uint64_t m = c.edge_mask; m;) {
            int e = std::countr_zero(m);
            m &= m - 1;
            deficiency[e] -= dir;
        }
        for (std::uint64_t m = c.non_edge_mask; m;) {
            int f = std::countr_zero(m);
            m &= m - 1;
            slack[f] -= dir;
        }
    }

    // Depth-limited DFS: next set must cover the currently most deficient
    // edge; any completing cover can be reordered to this form, so the scan
    // over depth limits is exact.
    bool dfs(std::uint32_t remaining) {
        if (++nodes > budget.max_nodes) {
            out_of_budget = true;
            return false;
        }
        int target = most_deficient_edge();
        if (target < 0) {
            solution = chosen;
            found = true;
            return true;
        }
        if (remaining == 0 || std::uint32_t(deficiency[target]) > remaining) return false;

        // Cheap global bound: each further set fixes at most max_fix deficient edges.
        std::uint64_t total_def = 0;
        std::uint64_t def_mask = 0;
        for (std::size_t e = 0; e < deficiency.size(); ++e)
            if (deficiency[e] > 0) {
                total_def += std::uint64_t(deficiency[e]);
                def_mask |= std::uint64_t(1) << e;
            }
        std::uint32_t max_fix = 0;
        for (auto ci : inst.by_edge[target])
            max_fix = std::max<std::uint32_t>(
                max_fix, std::uint32_t(std::popcount(inst.candidates[ci].edge_mask & def_mask)));
        std::uint32_t all_max = max_fix;
        for (const auto& c : inst.candidates) {
            all_max = std::max<std::uint32_t>(all_max, std::uint32_t(std::popcount(c.edge_mask & def_mask)));
            if (all_max == total_def) break;
        }
        if (all_max == 0 || total_def > std::uint64_t(remaining) * all_max) return false;

        for (auto ci : inst.by_edge[target]) {
            const Candidate& c = inst.candidates[ci];
            if (!admissible(c)) continue;
            apply(c, 1);
            chosen.push_back(ci);
            bool ok = dfs(remaining - 1);
            chosen.pop_back();
            apply(c, -1);
            if (ok) return true;
            if (out_of_budget) return false;
        }
        return false;
    }
};

CoverMultiset to_cover(const Instance& inst, const std::vector<std::uint32_t>& chosen) {
    CoverMultiset c(inst.g.order());
    for (auto ci : chosen) c.add(inst.candidates[ci].vertices);
    return c;
}

CoverMultiset trivial_cover(const Graph& g, std::uint32_t k) {
    CoverMultiset c(g.order());
    for (std::uint32_t u = 0; u < g.order(); ++u)
        for (std::uint32_t v = u + 1; v < g.order(); ++v)
            if (g.has_edge(u, v)) c.add(Bitset::of(g.order(), {u, v}), k);
    return c;
}

}  // namespace

PhiResult exact_phi_k(const Graph& g, std::uint32_t k, const SearchBudget& budget) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    PhiResult result;
    if (g.edge_count() == 0) {
        result.phi = 0;
        result.cover = CoverMultiset(g.order());
        return result;
    }
    Instance inst(g, k);

    // k copies of every edge is always valid, so the optimum is at most k|E|.
    CoverMultiset best = trivial_cover(g, k);
    std::uint64_t upper = best.size();
    std::uint32_t max_per_set = 0;
    for (const auto& c : inst.candidates)
        max_per_set = std::max<std::uint32_t>(max_per_set, std::uint32_t(std::popcount(c.edge_mask)));
    std::uint64_t lower = std::max<std::uint64_t>(
        k, (std::uint64_t(k) * g.edge_count() + max_per_set - 1) / max_per_set);

    std::uint64_t nodes_total = 0;
    for (std::uint64_t m = lower; m < upper; ++m) {
        Search search(inst, budget);
        search.nodes = nodes_total;
        bool ok = search.dfs(std::uint32_t(m));
        nodes_total = search.nodes;
        if (search.out_of_budget) {
            result.status = PhiResult::Status::kBudgetExceeded;
            result.phi = std::uint32_t(upper);
            result.cover = best;
            result.nodes_explored = nodes_total;
            return result;
        }
        if (ok) {
            result.phi = std::uint32_t(search.solution.size());
            result.cover = to_cover(inst, search.solution);
            result.nodes_explored = nodes_total;
            return result;
        }
    }
    result.phi = std::uint32_t(upper);
    result.cover = best;
    result.nodes_explored = nodes_total;
    return result;
}

bool check_phi_monotone(const Graph& g, std::uint32_t k, const SearchBudget& budget) {
    PhiResult phi1 = exact_phi_k(g, 1, budget);
    PhiResult phik = exact_phi_k(g, k, budget);
    if (phi1.status != PhiResult::Status::kOptimal || phik.status != PhiResult::Status::kOptimal)
        throw BudgetExceeded("phi monotonicity check ran out of search budget");

    // Witness: the 1-cover plus k-1 copies of V(G) must certify as a k-cover.
    CoverMultiset witness = phi1.cover;
    if (k > 1) witness.add(Bitset::full(g.order()), k - 1);
    if (!is_k_cover(g, witness, k).valid) return false;
    return phik.phi <= phi1.phi + (k - 1);
}

}  // namespace qcover
