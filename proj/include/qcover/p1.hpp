#pragma once

#include <cstdint>
#include <vector>

#include "qcover/graph.hpp"
#include "qcover/rng.hpp"

namespace qcover {

// Density window for a subset of size x in a graph on n vertices:
//   strict : (1/2 ± 2 sqrt(ln n / x)) * C(x,2)
//   relaxed: (1/2 ± 3 sqrt(ln n / x)) * x^2 / 2
// Logs are natural throughout.
struct P1Window {
    double lo;
    double hi;
};
P1Window p1_window(std::uint32_t n, std::uint32_t x, bool relaxed = false);

struct P1Options {
    bool relaxed = false;
    std::uint32_t exhaustive_limit = 20;     // full 2^n scan up to here
    std::uint64_t samples_per_size = 100000; // random subsets per size class above
    RandomSource rng;
    std::size_t max_recorded_violations = 16;
};

struct P1Violation {
    std::vector<std::uint32_t> subset;
    std::uint64_t edges;
    double lo, hi;
};

struct P1Report {
    bool pass = true;
    bool exhaustive = false;
    std::uint64_t examined = 0;
    std::uint64_t violation_count = 0;
    std::vector<P1Violation> violations;
    // max over examined X of (distance outside the window) / C(|X|,2);
    // <= 0 means every examined subset sat inside its window.
    double worst_margin = -1.0;
};

// Density regularity check over vertex subsets: exhaustive for small n,
// random subsets per size class otherwise. Subsets of size <= 1 pass
// vacuously.
P1Report check_property_p1(const Graph& g, const P1Options& opt = {});

}  // namespace qcover
