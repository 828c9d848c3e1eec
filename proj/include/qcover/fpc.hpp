#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcover/cover.hpp"
#include "qcover/graph.hpp"
#include "qcover/rational.hpp"
#include "qcover/rng.hpp"

namespace qcover {

struct FpcItem {
    Rational x;  // > 0
    Rational w;  // >= 0; original items carry w <= 1, merged items may exceed 1
};

// Fractional pseudocover: weighted pairs (x_i, w_i) in context (n, k).
//   (P1)  sum w_i (x_i^3 - x_i^4/(8k-2)) >= 0
//   (P2)  sum w_i (x_i^3 + x_i^4/2)      >= k n^2 / (3 (9 ln n)^2)
struct Fpc {
    std::uint32_t n = 0;
    std::uint32_t k = 2;
    std::vector<FpcItem> items;

    Rational x0() const { return Rational(8) * k - 2; }
    Rational weight() const;
    // Indices of large items: x > x0 with positive weight.
    std::vector<std::size_t> large_items() const;

    std::string to_json() const;
    static Fpc from_json(const std::string& text);
};

struct FpcEval {
    Rational p1_sum;       // exact
    Rational p2_sum;       // exact
    double p2_threshold;   // k n^2/(3 (9 ln n)^2); irrational, evaluated in double
    bool p1_ok = false;
    bool p2_ok = false;
};
FpcEval check_fpc(const Fpc& a);

// (P2) right-hand side; also the bound the weight of any all-small FPC must
// meet after dividing by x0^4.
double p2_threshold(std::uint32_t n, std::uint32_t k);
double weight_lower_bound(std::uint32_t n, std::uint32_t k);

class NoSmallMass : public std::runtime_error {
public:
    explicit NoSmallMass(const std::string& what) : std::runtime_error(what) {}
};

struct BalanceResult {
    std::vector<std::pair<std::size_t, Rational>> beta;  // (item index, beta_i)
    Rational lambda;  // betas are lambda * w_i over the chosen S
};

// Finds S over items with x <= x0 and exact betas cancelling the large
// item's negative (P1) contribution: Eq. sum_S beta_i (x^3 - x^4/x0) +
// w_m (x_m^3 - x_m^4/x0) = 0. Greedy by largest per-unit contribution.
BalanceResult balance_large_item(const Fpc& a, std::size_t m_index);

struct EliminationIteration {
    std::size_t large_index = 0;
    Rational x_m, w_m;
    BalanceResult balance;
    Rational M;             // sum beta x^3 + w_m x_m^3 (= sum beta x^4 + w_m x_m^4 over x0)
    Rational merged_weight; // w_0' = w_m + sum beta
    Rational p1_sum, p2_sum, weight;  // after the iteration
    bool cubes_ok = false;   // w_0' x0^3 >= M
    bool fourths_ok = false; // w_0' x0^4 >= M x0
};

struct EliminationTrace {
    std::vector<EliminationIteration> iterations;
    std::string to_json() const;
};

// Successively replaces every large item by mass at x0, preserving weight and
// (P1) exactly and never decreasing the (P2) sum; the power-mean inequalities
// are theorems and are asserted on every iteration. Output has no large
// items and drops zero-weight entries, sorted by decreasing x.
std::pair<Fpc, EliminationTrace> eliminate_large(const Fpc& a);

// Conversion of a certified k-cover: one item per member with multiplicity,
// x_i = sqrt(|C_i| / (9 ln n)), w_i = 1. The x values are irrational, so the
// (P1)/(P2) sums are evaluated as high-precision enclosures instead of exact
// rationals, and pass/fail is reported, never enforced.
struct IntervalValue {
    double lo = 0.0, hi = 0.0;
};
struct ConvertedFpc {
    std::uint32_t n = 0, k = 0;
    std::vector<std::uint64_t> sizes;  // |C_i| per item, with multiplicity
    std::vector<double> x_approx;
    IntervalValue p1_sum, p2_sum, threshold;
    // +1 definite pass, -1 definite fail, 0 boundary within interval width
    int p1_verdict = 0, p2_verdict = 0;
    bool graph_p1_warning = false;   // graph failed the density property
    bool regime_warning = false;     // 3 sqrt(ln n / n) >= 1/(8k-6)
    std::string to_json() const;
};
ConvertedFpc cover_to_fpc(const Graph& g, const CoverMultiset& c, std::uint32_t k);

// Random valid FPC containing at least `min_large` large items; used by the
// elimination property runs.
struct RandomFpcOptions {
    std::uint32_t min_large = 1;
    std::uint32_t max_large = 4;
    std::uint32_t small_items = 12;
};
Fpc random_fpc(const RandomSource& src, const RandomFpcOptions& opt = {});

}  // namespace qcover
