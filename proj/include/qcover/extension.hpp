#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qcover/bitset.hpp"
#include "qcover/graph.hpp"
#include "qcover/rational.hpp"

namespace qcover {

// W-set statistics for a fixed subset S: the vertices outside S with exactly
// j neighbors in S, and for each x in S the members adjacent to x.
struct ExtensionProfile {
    Bitset S;
    std::uint32_t j = 0;
    Bitset W;                                            // all v outside S with |N(v) ∩ S| = j
    std::vector<std::pair<std::uint32_t, Bitset>> per_x; // x in S -> members of W adjacent to x
};

// Just the W set; the hot path for the sequential sampler.
Bitset extension_set(const Graph& g, const Bitset& S, std::uint32_t j);

ExtensionProfile extension_profile(const Graph& g, const Bitset& S, std::uint32_t j);

// Expected sizes over G(n,1/2) with S fixed, |S| = s:
//   mu    = (n-s) C(s,j)     2^-s   (size of W)
//   omega = (n-s) C(s-1,j-1) 2^-s   (size of the per-x slice)
// Exact rationals; j*mu == s*omega for j >= 1.
std::pair<Rational, Rational> mu_omega(std::uint32_t n, std::uint32_t s, std::uint32_t j);

}  // namespace qcover
