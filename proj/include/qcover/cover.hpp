#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcover/bitset.hpp"
#include "qcover/graph.hpp"

namespace qcover {

// Multiset of vertex subsets. Kept canonical as a sorted list of
// (set, multiplicity) pairs so equality and hashing are structural.
class CoverMultiset {
public:
    CoverMultiset() = default;
    explicit CoverMultiset(std::uint32_t ground_n) : ground_n_(ground_n) {}

    std::uint32_t ground() const { return ground_n_; }
    void add(const Bitset& set, std::uint64_t multiplicity = 1);
    // Removes up to `multiplicity` copies; returns how many were removed.
    std::uint64_t remove(const Bitset& set, std::uint64_t multiplicity);

    // Cardinality counted with multiplicity.
    std::uint64_t size() const { return total_; }
    bool empty() const { return total_ == 0; }
    std::size_t distinct_count() const { return entries_.size(); }
    const std::vector<std::pair<Bitset, std::uint64_t>>& entries() const { return entries_; }

    // |C({u,v})|: members containing both endpoints, with multiplicity.
    std::uint64_t coverage(std::uint32_t u, std::uint32_t v) const;

    bool operator==(const CoverMultiset& o) const { return entries_ == o.entries_; }

    // Text format: "m <line count>" then one line per distinct set:
    // "mult v1 v2 ...". Reader skips '#' comments.
    static CoverMultiset read_text(std::istream& in, std::uint32_t ground_n);
    void write_text(std::ostream& out) const;
    static CoverMultiset load(const std::string& path, std::uint32_t ground_n);
    void save(const std::string& path) const;

private:
    std::uint32_t ground_n_ = 0;
    std::uint64_t total_ = 0;
    std::vector<std::pair<Bitset, std::uint64_t>> entries_;  // sorted by Bitset order
};

struct CoverViolation {
    std::uint32_t u = 0, v = 0;
    bool is_edge = false;       // deficient edge vs over-covered non-edge
    std::uint64_t count = 0;
};

struct CoverCertificate {
    bool valid = false;
    std::uint32_t k = 0;
    std::vector<CoverViolation> violations;  // first entry = first violation found
    std::string to_json() const;
};

// Pass iff every edge is covered >= k times and every non-edge <= k-1 times.
CoverCertificate is_k_cover(const Graph& g, const CoverMultiset& c, std::uint32_t k,
                            std::size_t max_violations = 16);

// Per-vertex ground-set assignment; ground set is [1..m] here indexed 0..m-1.
struct SetRepresentation {
    std::uint32_t ground_size = 0;
    std::vector<std::vector<std::uint32_t>> assignments;  // S_v as sorted index lists
};

// Fact-level bijection: S_v = { i : v in C_i } over an (arbitrary but fixed)
// ordering of the multiset expanded with multiplicity, and back.
SetRepresentation cover_to_representation(const CoverMultiset& c);
CoverMultiset representation_to_cover(const SetRepresentation& r, std::uint32_t n);

}  // namespace qcover
