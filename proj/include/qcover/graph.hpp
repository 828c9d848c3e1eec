#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcover/bitset.hpp"
#include "qcover/rng.hpp"

namespace qcover {

// Simple undirected graph on n labeled vertices, adjacency as bitset rows.
// Immutable after construction in practice; all analysis code treats it as
// shared read-only state.
class Graph {
public:
    explicit Graph(std::uint32_t n);

    std::uint32_t order() const { return n_; }
    std::uint64_t edge_count() const { return edge_count_; }

    void add_edge(std::uint32_t u, std::uint32_t v);
    bool has_edge(std::uint32_t u, std::uint32_t v) const { return adj_[u].test(v); }
    const Bitset& neighbors(std::uint32_t v) const { return adj_[v]; }
    std::uint32_t degree(std::uint32_t v) const { return adj_[v].count(); }

    // Number of edges induced by S.
    std::uint64_t induced_edges(const Bitset& S) const;

    // Symmetry and zero diagonal; throws std::logic_error on violation.
    void check_invariants() const;

    // Each of the C(n,2) pairs is an edge independently with probability 1/2.
    static Graph sample_gnp_half(std::uint32_t n, const RandomSource& src);

    static Graph complete(std::uint32_t n);
    static Graph cycle(std::uint32_t n);
    static Graph path(std::uint32_t n);

    // Text format: "n <n>" then one "u v" line per edge, 0-indexed, u < v,
    // sorted. Reader skips blank lines and '#' comments; writer is canonical.
    static Graph read_text(std::istream& in);
    void write_text(std::ostream& out) const;
    static Graph load(const std::string& path);
    void save(const std::string& path) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    std::uint32_t n_;
    std::uint64_t edge_count_ = 0;
    std::vector<Bitset> adj_;
};

}  // namespace qcover
