#include "qcover/cover.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qcover {

void CoverMultiset::add(const Bitset& set, std::uint64_t multiplicity) {
    if (multiplicity == 0) return;
    if (set.universe() != ground_n_) throw std::invalid_argument("set universe mismatch");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), set,
                               [](const auto& e, const Bitset& s) { return e.first < s; });
    if (it != entries_.end() && it->first == set)
        it->second += multiplicity;
    else
        entries_.insert(it, {set, multiplicity});
    total_ += multiplicity;
}

std::uint64_t CoverMultiset::remove(const Bitset& set, std::uint64_t multiplicity) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), set,
                               [](const auto& e, const Bitset& s) { return e.first < s; });
    if (it == entries_.end() || !(it->first == set)) return 0;
    std::uint64_t removed = std::min(multiplicity, it->second);
    it->second -= removed;
    total_ -= removed;
    if (it->second == 0) entries_.erase(it);
    return removed;
}

std::uint64_t CoverMultiset::coverage(std::uint32_t u, std::uint32_t v) const {
    if (u == v) throw std::invalid_argument("coverage takes a pair of distinct vertices");
    std::uint64_t c = 0;
    for (const auto& [set, mult] : entries_)
        if (set.test(u) && set.test(v)) c += mult;
    return c;
}

CoverMultiset CoverMultiset::read_text(std::istream& in, std::uint32_t ground_n) {
    CoverMultiset c(ground_n);
    std::string line;
    bool have_header = false;
    std::size_t expected = 0, seen = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag)) continue;
            if (tag != "m") throw std::invalid_argument("cover file must start with 'm <count>'");
            if (!(ls >> expected)) throw std::invalid_argument("bad cover line count");
            have_header = true;
            continue;
        }
        std::uint64_t mult;
        if (!(ls >> mult)) continue;
        Bitset set(ground_n);
        std::uint32_t v;
        while (ls >> v) {
            if (v >= ground_n) throw std::invalid_argument("cover vertex out of range");
            set.set(v);
        }
        c.add(set, mult);
        ++seen;
    }
    if (!have_header) throw std::invalid_argument("empty cover file");
    if (seen != expected) throw std::invalid_argument("cover line count mismatch");
    return c;
}

void CoverMultiset::write_text(std::ostream& out) const {
    out << "m " << entries_.size() << "\n";
    for (const auto& [set, mult] : entries_) {
        out << mult;
        set.for_each([&](std::uint32_t v) { out << " " << v; });
        out << "\n";
    }
}

CoverMultiset CoverMultiset::load(const std::string& path, std::uint32_t ground_n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cover file: " + path);
    return read_text(in, ground_n);
}

void CoverMultiset::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cover file: " + path);
    write_text(out);
}

std::string CoverCertificate::to_json() const {
    nlohmann::json j;
    j["valid"] = valid;
    j["k"] = k;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : violations)
        j["violations"].push_back({{"u", v.u}, {"v", v.v}, {"is_edge", v.is_edge}, {"count", v.count}});
    return j.dump();
}

CoverCertificate is_k_cover(const Graph& g, const CoverMultiset& c, std::uint32_t k,
                            std::size_t max_violations) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    CoverCertificate cert;
    cert.k = k;
    cert.valid = true;
    for (std::uint32_t u = 0; u < g.order() && cert.violations.size() < max_violations; ++u) {
        for (std::uint32_t v = u + 1; v < g.order(); ++v) {
            std::uint64_t cov = c.coverage(u, v);
            bool edge = g.has_edge(u, v);
            bool bad = edge ? cov < k : cov >= k;
            if (bad) {
                cert.valid = false;
                cert.violations.push_back({u, v, edge, cov});
                if (cert.violations.size() >= max_violations) break;
            }
        }
    }
    return cert;
}

SetRepresentation cover_to_representation(const CoverMultiset& c) {
    SetRepresentation r;
    r.assignments.assign(c.ground(), {});
    std::uint32_t index = 0;
    for (const auto& [set, mult] : c.entries())
        for (std::uint64_t copy = 0; copy < mult; ++copy, ++index)
            set.for_each([&](std::uint32_t v) { r.assignments[v].push_back(index); });
    r.ground_size = index;
    return r;
}

CoverMultiset representation_to_cover(const SetRepresentation& r, std::uint32_t n) {
    CoverMultiset c(n);
    std::vector<Bitset> sets(r.ground_size, Bitset(n));
    for (std::uint32_t v = 0; v < r.assignments.size(); ++v)
        for (auto i : r.assignments[v]) {
            if (i >= r.ground_size) throw std::invalid_argument("assignment index out of ground set");
            sets[i].set(v);
        }
    for (const auto& s : sets) c.add(s);
    return c;
}

}  // namespace qcover
