#include "qcover/p1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcover {

P1Window p1_window(std::uint32_t n, std::uint32_t x, bool relaxed) {
    double half = (relaxed ? 3.0 : 2.0) * std::sqrt(std::log(double(n)) / double(x));
    double pairs = relaxed ? double(x) * double(x) / 2.0 : double(x) * (double(x) - 1.0) / 2.0;
    return {(0.5 - half) * pairs, (0.5 + half) * pairs};
}

namespace {

struct Scanner {
    const Graph& g;
    const P1Options& opt;
    P1Report report;
    std::vector<P1Window> window_by_size;

    explicit Scanner(const Graph& graph, const P1Options& options) : g(graph), opt(options) {
        window_by_size.resize(g.order() + 1);
        for (std::uint32_t x = 2; x <= g.order(); ++x) window_by_size[x] = p1_window(g.order(), x, opt.relaxed);
    }

    void examine(const std::vector<std::uint32_t>& subset, std::uint64_t edges) {
        ++report.examined;
        const auto& w = window_by_size[subset.size()];
        double pairs = double(subset.size()) * (double(subset.size()) - 1.0) / 2.0;
        double margin = std::max(w.lo - double(edges), double(edges) - w.hi) / pairs;
        report.worst_margin = std::max(report.worst_margin, margin);
        if (double(edges) < w.lo || double(edges) > w.hi) {
            report.pass = false;
            ++report.violation_count;
            if (report.violations.size() < opt.max_recorded_violations)
                report.violations.push_back({subset, edges, w.lo, w.hi});
        }
    }
};

}  // namespace

P1Report check_property_p1(const Graph& g, const P1Options& opt) {
    const std::uint32_t n = g.order();
    if (n < 2) throw std::invalid_argument("P1 check needs n >= 2");
    Scanner scan(g, opt);

    if (n <= opt.exhaustive_limit && n <= 63) {
        scan.report.exhaustive = true;
        // Word-sized adjacency rows; e(X) by popcount per member.
        std::vector<std::uint64_t> row(n, 0);
        for (std::uint32_t u = 0; u < n; ++u)
            g.neighbors(u).for_each([&](std::uint32_t v) { row[u] |= std::uint64_t(1) << v; });
        const std::uint64_t full = (std::uint64_t(1) << n) - 1;
        for (std::uint64_t mask = 1; mask <= full; ++mask) {
            int size = std::popcount(mask);
            if (size < 2) continue;
            std::uint64_t twice = 0;
            for (std::uint64_t m = mask; m;) {
                std::uint32_t v = std::uint32_t(std::countr_zero(m));
                m &= m - 1;
                twice += std::popcount(row[v] & mask);
            }
            std::vector<std::uint32_t> subset;
            subset.reserve(size);
            for (std::uint64_t m = mask; m;) {
                subset.push_back(std::uint32_t(std::countr_zero(m)));
                m &= m - 1;
            }
            scan.examine(subset, twice / 2);
        }
        return scan.report;
    }

    // Sampled mode: uniform x-subsets per size class.
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t x = 2; x <= n; ++x) {
        Rng rng(opt.rng.stream(x));
        for (std::uint64_t trial = 0; trial < opt.samples_per_size; ++trial) {
            std::iota(pool.begin(), pool.end(), 0);
            for (std::uint32_t i = 0; i < x; ++i)
                std::swap(pool[i], pool[i + rng.uniform_below(n - i)]);
            std::vector<std::uint32_t> subset(pool.begin(), pool.begin() + x);
            Bitset S = Bitset::from_vector(n, subset);
            scan.examine(subset, g.induced_edges(S));
        }
    }
    return scan.report;
}

}  // namespace qcover
