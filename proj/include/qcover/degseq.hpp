#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcover/common.hpp"
#include "qcover/extension.hpp"
#include "qcover/graph.hpp"
#include "qcover/quasiclique.hpp"
#include "qcover/rational.hpp"

namespace qcover {

// Everything needed to decide membership of a backward degree sequence
// (j_l, ..., j_{t-1}): the parameter bundle, the window width gamma, the
// prefix length l in {0,2} and e(U) for the sum condition.
struct DegseqContext {
    QuasicliqueParams params;
    Rational gamma;
    std::uint32_t l = 2;    // 0 or 2
    std::uint32_t e_U = 1;  // e(U); must be 0 when l == 0

    std::uint32_t len() const { return params.t() - l; }
    std::uint64_t target_sum() const { return params.T() - e_U; }
    // The window (1/2+alpha +- gamma)s binds for every s >= c ln n, boundary
    // inclusive. At desk scale c ln n < 1, so it binds at every s >= 1; this
    // makes the sequence family very small for tiny t.
    bool window_binds(std::uint32_t s) const;
    Rational window_lo(std::uint32_t s) const;
    Rational window_hi(std::uint32_t s) const;
};

DegseqContext make_degseq_context(const QuasicliqueParams& p, const Rational& gamma, std::uint32_t l,
                                  std::uint32_t e_U);

struct JGammaCheck {
    bool ok = false;
    std::string violation;  // first violated condition when not ok
};

// The three membership conditions: 0 <= j_s <= s, window at every binding s,
// and sum = T - e(U).
JGammaCheck in_J_gamma(const std::vector<std::uint32_t>& seq, const DegseqContext& ctx);

// All members, lexicographic. DFS over the integer grid with window and
// residual-sum pruning.
std::vector<std::vector<std::uint32_t>> enumerate_J_gamma(const DegseqContext& ctx,
                                                          const SearchBudget& budget = {});

// Entry s = |N(x_{s+1}) ∩ {x_1..x_s}| for s = l..|tuple|-1.
std::vector<std::uint32_t> backward_degrees(const Graph& g, const std::vector<std::uint32_t>& tuple,
                                            std::uint32_t l);

// Tuple membership in the admissible family: starts with U in order and its
// backward degree sequence is a J_gamma member.
bool is_admissible(const Graph& g, const std::vector<std::uint32_t>& tuple,
                   const std::vector<std::uint32_t>& U, const DegseqContext& ctx);

struct PropertyPOptions {
    double delta = -1.0;  // < 0 means default n^(-1/5)
    std::uint32_t exhaustive_limit = 14;
    std::uint64_t samples_per_size = 2000;
    RandomSource rng;
};

struct PropertyPWorst {
    std::uint32_t s = 0, j = 0;
    std::vector<std::uint32_t> subset;
    std::optional<std::uint32_t> x;  // set for a per-x violation
    std::uint64_t observed = 0;
    double expected = 0.0;
    double relative = 0.0;
};

struct PropertyPReport {
    bool pass = true;
    double delta = 0.0;
    bool exhaustive = false;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    PropertyPWorst worst;
};

// Extension regularity: for every (s,j) pair in the two stated regions and
// every examined S (all of them for small n, sampled otherwise) and x in S,
// |W_S^j| and |W_{S,x}^j| must lie within (1 +- delta) of mu/omega.
PropertyPReport check_property_P(const Graph& g, const QuasicliqueParams& p,
                                 const PropertyPOptions& opt = {});

}  // namespace qcover
