#include "qcover/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qcover {

Graph::Graph(std::uint32_t n) : n_(n), adj_(n, Bitset(n)) {
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
    if (u >= n_ || v >= n_) throw std::out_of_range("vertex index out of range");
    if (u == v) throw std::invalid_argument("self-loops not allowed");
    if (adj_[u].test(v)) return;
    adj_[u].set(v);
    adj_[v].set(u);
    ++edge_count_;
}

std::uint64_t Graph::induced_edges(const Bitset& S) const {
    std::uint64_t twice = 0;
    S.for_each([&](std::uint32_t v) { twice += adj_[v].intersection_count(S); });
    return twice / 2;
}

void Graph::check_invariants() const {
    for (std::uint32_t u = 0; u < n_; ++u) {
        if (adj_[u].test(u)) throw std::logic_error("self-loop at vertex " + std::to_string(u));
        for (std::uint32_t v = u + 1; v < n_; ++v)
            if (adj_[u].test(v) != adj_[v].test(u)) throw std::logic_error("asymmetric adjacency");
    }
}

Graph Graph::sample_gnp_half(std::uint32_t n, const RandomSource& src) {
    Graph g(n);
    Rng rng(src);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (rng.next_bit()) g.add_edge(u, v);
    return g;
}

Graph Graph::complete(std::uint32_t n) {
    Graph g(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph Graph::cycle(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    Graph g(n);
    for (std::uint32_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    return g;
}

Graph Graph::path(std::uint32_t n) {
    Graph g(n);
    for (std::uint32_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

Graph Graph::read_text(std::istream& in) {
    std::string line;
    std::uint32_t n = 0;
    bool have_n = false;
    Graph g(1);
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_n) {
            std::string tag;
            if (!(ls >> tag)) continue;
            if (tag != "n") throw std::invalid_argument("graph file must start with 'n <count>'");
            if (!(ls >> n) || n == 0) throw std::invalid_argument("bad vertex count");
            g = Graph(n);
            have_n = true;
            continue;
        }
        std::uint32_t u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw std::invalid_argument("edge line needs two endpoints");
        g.add_edge(u, v);
    }
    if (!have_n) throw std::invalid_argument("empty graph file");
    return g;
}

void Graph::write_text(std::ostream& out) const {
    out << "n " << n_ << "\n";
    for (std::uint32_t u = 0; u < n_; ++u)
        for (std::uint32_t v = adj_[u].next_set(u + 1); v < n_; v = adj_[u].next_set(v + 1))
            out << u << " " << v << "\n";
}

Graph Graph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_text(in);
}

void Graph::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    write_text(out);
}

}  // namespace qcover
