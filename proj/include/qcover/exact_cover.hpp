#pragma once

#include <cstdint>

#include "qcover/common.hpp"
#include "qcover/cover.hpp"
#include "qcover/graph.hpp"

namespace qcover {

struct PhiResult {
    enum class Status { kOptimal, kBudgetExceeded };
    Status status = Status::kOptimal;
    std::uint32_t phi = 0;            // optimum, or best known upper bound on budget exhaustion
    CoverMultiset cover;              // witness achieving `phi`
    std::uint64_t nodes_explored = 0;
};

// Exact k-covering number by iterative-deepening branch and bound over all
// candidate subsets. Sets containing non-edges are admissible; the search
// tracks a residual budget of k-1 per non-edge. Intended for n <= 8.
PhiResult exact_phi_k(const Graph& g, std::uint32_t k, const SearchBudget& budget = {});

// Verifies Phi_k(G) <= Phi_1(G) + k - 1 by solving both sides exactly and
// certifying the witness cover Phi_1-cover + (k-1) copies of V(G).
bool check_phi_monotone(const Graph& g, std::uint32_t k, const SearchBudget& budget = {});

}  // namespace qcover
