#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qcover/common.hpp"
#include "qcover/cover.hpp"
#include "qcover/graph.hpp"
#include "qcover/quasiclique.hpp"
#include "qcover/rational.hpp"
#include "qcover/rng.hpp"

namespace qcover {

// Everything observable about one construction run: the three cover stages,
// the defect statistics of the initial random cover, and the repair
// accounting. added_edge_copies == k * E2 by construction.
struct ConstructionTrace {
    Rational q;  // selection probability actually used (0 when repair-only)
    CoverMultiset c_initial, c_1, c_final;
    std::uint64_t X = 0, Y = 0, Z = 0;
    std::uint64_t E1 = 0, E2 = 0;
    std::uint64_t added_edge_copies = 0;
    std::uint64_t removed_elements = 0;  // |C \ C_1|
    std::uint32_t k = 0;
    CoverCertificate certificate;
    std::string to_json(bool include_covers = false) const;
};

// q = k(1+alpha)/N1; throws InfeasibleRegime when q >= 1.
Rational selection_probability(const QuasicliqueParams& params, std::uint32_t k);

// Keeps each member of Q_G independently with probability q.
CoverMultiset sample_candidate_cover(const Graph& g, const QuasicliqueParams& params, std::uint32_t k,
                                     Rng& rng, const SearchBudget& budget = {});

// X: deficient edges, Y: non-edges covered >= k times, Z: non-edges covered
// more than k ln n times. Exact counts by full pair scan.
struct DefectStats {
    std::uint64_t X = 0, Y = 0, Z = 0;
};
DefectStats defect_stats(const Graph& g, const CoverMultiset& c, std::uint32_t k);

// Two-step repair: drop every member covering an over-covered non-edge, then
// add k copies of each deficient edge. The result always certifies; the
// trace inequalities E1 <= s_max^2 |C\C_1| and E2 <= X + E1 are asserted.
ConstructionTrace repair(const Graph& g, const CoverMultiset& c, std::uint32_t k);

struct PipelineOptions {
    std::optional<double> epsilon;          // derive alpha = k^(-1/2+eps), t = c alpha^-2 ln n
    std::optional<Rational> alpha_override; // or supply (alpha, t) directly
    std::optional<std::uint32_t> t_override;
    std::uint32_t retries = 1;
    RandomSource rng;
    SearchBudget budget;
};

struct PipelineResult {
    ConstructionTrace trace;
    QuasicliqueParams params;
    Rational requested_alpha;  // before T-integrality adjustment
    double ideal_t = 0.0;      // c alpha^-2 ln n before rounding
    bool regime_ok = true;     // (log log n)^(1/eps) <= k <= log n
    std::uint32_t retries_run = 0;
};

// Full upper-bound pipeline: parameter derivation, retried sampling keeping
// the lexicographically best (X,Y,Z), then repair. Throws InfeasibleRegime
// when t rounds below 2 or q >= 1.
PipelineResult pipeline(const Graph& g, std::uint32_t k, const PipelineOptions& opt);

}  // namespace qcover
