#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcover/bitset.hpp"
#include "qcover/common.hpp"
#include "qcover/graph.hpp"
#include "qcover/rational.hpp"

namespace qcover {

// Parameter bundle (n, alpha, t). T = (1/2+alpha)*C(t,2) must be an exact
// integer; rounding it would silently change every count formula downstream,
// so construction rejects non-integral T.
class QuasicliqueParams {
public:
    static QuasicliqueParams make(std::uint32_t n, const Rational& alpha, std::uint32_t t);
    // Derives alpha = T/C(t,2) - 1/2 from an integer edge target.
    static QuasicliqueParams from_edge_target(std::uint32_t n, std::uint32_t t, std::uint64_t T);

    std::uint32_t n() const { return n_; }
    const Rational& alpha() const { return alpha_; }
    std::uint32_t t() const { return t_; }
    std::uint64_t T() const { return T_; }
    std::uint64_t pair_count() const { return std::uint64_t(t_) * (t_ - 1) / 2; }

    // Degree window of the quasiclique definition: (1/2 + alpha -+ 3alpha/4)t.
    Rational degree_lo() const { return (Rational(1, 2) + alpha_ / 4) * t_; }
    Rational degree_hi() const { return (Rational(1, 2) + alpha_ * 7 / 4) * t_; }

    // Exponent bookkeeping constants; natural log is the only supported base.
    static double c_const();  // 1/(100 ln 2)
    static double A_const();  // 1e-4 * c
    double c_log_n() const;

    // Advisory only: relative gap between t and c*alpha^-2*ln n.
    double paper_regime_gap() const;

private:
    QuasicliqueParams() = default;
    std::uint32_t n_ = 0;
    Rational alpha_;
    std::uint32_t t_ = 0;
    std::uint64_t T_ = 0;
};

struct QuasicliqueCheck {
    bool ok = false;
    std::string reason;  // set when ok is false
};

// S induces an alpha-quasiclique: |S| = t, exactly T induced edges, and
// every induced degree inside the closed window [degree_lo, degree_hi].
QuasicliqueCheck is_quasiclique(const Graph& g, const Bitset& S, const QuasicliqueParams& p);

// All members of Q_G containing U (|U| in {0,2}), sorted by vertex list.
std::vector<Bitset> enumerate_Q(const Graph& g, const std::vector<std::uint32_t>& U,
                                const QuasicliqueParams& p, const SearchBudget& budget = {});

// Same family with the degree condition dropped: t-subsets containing U with
// exactly T induced edges. Its expectation over G(n,1/2) is exactly the
// corresponding N-value, which makes it the desk-scale counting oracle.
std::vector<Bitset> relaxed_count_family(const Graph& g, const std::vector<std::uint32_t>& U,
                                         const QuasicliqueParams& p, const SearchBudget& budget = {});

struct CountTriple {
    Rational N0, N1, N2;
};

// General expected-count form for |U| = l with e(U) = e_U:
//   C(n-l, t-l) * C(C(t,2)-C(l,2), T-e_U) * 2^(C(l,2)-C(t,2))
Rational expected_count(const QuasicliqueParams& p, std::uint32_t l, std::uint32_t e_U);
CountTriple expected_counts(const QuasicliqueParams& p);

struct PairDeviation {
    std::uint32_t u = 0, v = 0;
    std::uint64_t count = 0;
    double relative = 0.0;
};

struct GoodnessReport {
    bool pass = true;
    double delta = 0.0;        // supplied tolerance
    double paper_delta = 0.0;  // n^(-A alpha^2), reported for comparison
    std::uint64_t q_total = 0;
    CountTriple expected;
    double worst_global = 0.0;     // |count/target - 1| for the global count
    double worst_edge = 0.0;       // worst over edges
    double worst_non_edge = 0.0;   // worst over non-edges
    std::vector<PairDeviation> failing_pairs;
};

// Checks the three goodness count bands with the supplied relative tolerance.
// A zero target demands a zero count.
GoodnessReport check_alpha_t_good(const Graph& g, const QuasicliqueParams& p, double delta,
                                  const SearchBudget& budget = {});

}  // namespace qcover
