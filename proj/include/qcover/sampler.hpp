#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qcover/common.hpp"
#include "qcover/degseq.hpp"
#include "qcover/graph.hpp"
#include "qcover/quasiclique.hpp"
#include "qcover/rational.hpp"
#include "qcover/rng.hpp"

namespace qcover {

// One run of the sequential process. Failure (an empty extension set) is
// data, not an error: the paper's regime never hits it, desk scale does.
struct SampledTuple {
    std::vector<std::uint32_t> vertices;   // full length t on success
    std::vector<std::uint32_t> path_sizes; // |W| at each completed step
    std::optional<std::uint32_t> failed_at;
    Rational exact_prob;  // product of 1/|W|; set only on success

    bool success() const { return !failed_at.has_value(); }
};

// Sequential random process: z1,z2 = e, then z_{s+1} uniform on the
// extension set W_{{z1..zs}}^{j_s}.
SampledTuple run_process(const Graph& g, std::pair<std::uint32_t, std::uint32_t> e,
                         const std::vector<std::uint32_t>& jseq, Rng& rng);

// Probability that run_process emits exactly this tuple: the product of
// 1/|W| along its path, exact. Throws on a tuple the process cannot emit.
Rational exact_tuple_probability(const Graph& g, std::pair<std::uint32_t, std::uint32_t> e,
                                 const std::vector<std::uint32_t>& jseq,
                                 const std::vector<std::uint32_t>& tuple);

// Exhaustive enumeration of the admissible tuples with backward sequence
// jseq (test oracle and exact mode for small instances).
std::vector<std::vector<std::uint32_t>> enumerate_B_tuples(const Graph& g,
                                                           const std::vector<std::uint32_t>& U,
                                                           const std::vector<std::uint32_t>& jseq,
                                                           const SearchBudget& budget = {});

// Full process tree: per-tuple exact probabilities plus the exact failure
// mass; the two sum to 1 in rationals.
struct ProcessDistribution {
    std::vector<std::pair<std::vector<std::uint32_t>, Rational>> tuples;
    Rational failure_prob;
};
ProcessDistribution enumerate_process_distribution(const Graph& g,
                                                   std::pair<std::uint32_t, std::uint32_t> e,
                                                   const std::vector<std::uint32_t>& jseq,
                                                   const SearchBudget& budget = {});

struct SisPerJ {
    std::vector<std::uint32_t> jseq;
    std::uint64_t trials = 0, failures = 0;
    double b_estimate = 0.0, b_std_error = 0.0;
    double q_estimate = 0.0, q_std_error = 0.0;
};

struct SisEstimate {
    double b_estimate = 0.0, b_std_error = 0.0;  // |B_gamma(U)|
    double q_estimate = 0.0, q_std_error = 0.0;  // |Q_gamma(U)|
    std::uint64_t trials = 0, failures = 0;
    std::uint64_t j_family_size = 0;
    std::vector<SisPerJ> per_j;
};

// Sequential importance sampling: per trial draw j uniformly from J_gamma(U),
// run the process, weight |J| * prod |W| on success (0 on failure). Unbiased
// for |B_gamma(U)|; the indicator-weighted variant estimates |Q_gamma(U)|.
SisEstimate sis_estimate_counts(const Graph& g, const std::vector<std::uint32_t>& U,
                                const Rational& gamma, const QuasicliqueParams& params,
                                std::uint64_t trials, const RandomSource& src,
                                const SearchBudget& budget = {});

// Induced degree of the s-th tuple vertex (1-indexed) inside the tuple.
std::uint32_t measure_ds(const Graph& g, const std::vector<std::uint32_t>& tuple, std::uint32_t s);

struct FractionEstimate {
    double fraction = 0.0;
    double std_error = 0.0;  // zero when exact
    bool exact = false;
    Rational exact_fraction;      // set when exact
    std::uint64_t trials = 0;     // samples drawn, or population size when exact
};

// Fraction of uniform T-edge graphs on [t] containing edge {1,2} whose
// backward degree sequence lies in J_gamma(e). Exact by enumeration when the
// population C(C(t,2)-1, T-1) is at most exact_threshold.
FractionEstimate sample_T_gamma_fraction(const QuasicliqueParams& params, const Rational& gamma,
                                         std::uint64_t trials, const RandomSource& src,
                                         std::uint64_t exact_threshold = 1u << 20);

// Fraction of orderings of a quasiclique Q that fix e as the first two
// entries and are alpha-admissible. Exact over all (t-2)! orderings when
// that is at most exact_threshold.
FractionEstimate permutation_admissible_fraction(const Graph& g, const Bitset& Q,
                                                 std::pair<std::uint32_t, std::uint32_t> e,
                                                 const QuasicliqueParams& params, std::uint64_t trials,
                                                 const RandomSource& src,
                                                 std::uint64_t exact_threshold = 40320);

}  // namespace qcover
