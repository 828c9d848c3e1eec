#include "qcover/quasiclique.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcover {

QuasicliqueParams QuasicliqueParams::make(std::uint32_t n, const Rational& alpha, std::uint32_t t) {
    if (t < 2) throw std::invalid_argument("t must be >= 2");
    if (alpha <= 0 || alpha > Rational(1, 2)) throw std::invalid_argument("alpha must lie in (0, 1/2]");
    QuasicliqueParams p;
    p.n_ = n;
    p.alpha_ = alpha;
    p.t_ = t;
    Rational T = (Rational(1, 2) + alpha) * Rational(std::uint64_t(t) * (t - 1) / 2);
    if (!is_integral(T))
        throw std::invalid_argument("T = (1/2+alpha)C(t,2) is not an integer for alpha=" + to_string(alpha) +
                                    ", t=" + std::to_string(t));
    p.T_ = T.get_num().get_ui();
    return p;
}

QuasicliqueParams QuasicliqueParams::from_edge_target(std::uint32_t n, std::uint32_t t, std::uint64_t T) {
    std::uint64_t pairs = std::uint64_t(t) * (t - 1) / 2;
    if (T > pairs) throw std::invalid_argument("edge target exceeds C(t,2)");
    Rational alpha = Rational(T, pairs) - Rational(1, 2);
    return make(n, alpha, t);
}

double QuasicliqueParams::c_const() { return 1.0 / (100.0 * std::log(2.0)); }
double QuasicliqueParams::A_const() { return 1e-4 * c_const(); }
double QuasicliqueParams::c_log_n() const { return c_const() * std::log(double(n_)); }

double QuasicliqueParams::paper_regime_gap() const {
    double a = alpha_.get_d();
    double ideal = c_const() * std::log(double(n_)) / (a * a);
    return std::abs(double(t_) - ideal) / std::max(1.0, ideal);
}

QuasicliqueCheck is_quasiclique(const Graph& g, const Bitset& S, const QuasicliqueParams& p) {
    if (S.count() != p.t()) throw std::invalid_argument("subset size must equal t");
    std::uint64_t e = g.induced_edges(S);
    if (e != p.T())
        return {false, "induced edge count " + std::to_string(e) + " != T = " + std::to_string(p.T())};
    Rational lo = p.degree_lo(), hi = p.degree_hi();
    QuasicliqueCheck out{true, ""};
    S.for_each([&](std::uint32_t v) {
        if (!out.ok) return;
        Rational d(g.neighbors(v).intersection_count(S));
        if (d < lo || d > hi)
            out = {false, "vertex " + std::to_string(v) + " degree " + to_string(d) + " outside [" +
                              to_string(lo) + ", " + to_string(hi) + "]"};
    });
    return out;
}

namespace {

struct FamilyScan {
    const Graph& g;
    const QuasicliqueParams& p;
    bool check_degrees;
    const SearchBudget& budget;
    std::uint64_t nodes = 0;
    std::vector<std::uint32_t> picked;
    Bitset current;
    std::uint64_t edges_in = 0;
    std::vector<Bitset> out;

    FamilyScan(const Graph& graph, const QuasicliqueParams& params, bool degrees, const SearchBudget& b)
        : g(graph), p(params), check_degrees(degrees), budget(b), current(graph.order()) {}

    void run(const std::vector<std::uint32_t>& U) {
        if (!U.empty()) {
            for (auto v : U) {
                if (v >= g.order()) throw std::invalid_argument("U vertex out of range");
                if (current.test(v)) throw std::invalid_argument("U has repeated vertices");
                edges_in += g.neighbors(v).intersection_count(current);
                current.set(v);
                picked.push_back(v);
            }
        }
        extend(0);
        std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) {
            return a.to_vector() < b.to_vector();
        });
    }

    void extend(std::uint32_t from) {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("quasiclique enumeration budget exhausted");
        const std::uint32_t t = p.t();
        const std::uint32_t have = std::uint32_t(picked.size());
        if (have == t) {
            if (edges_in != p.T()) return;
            if (check_degrees && !is_quasiclique(g, current, p).ok) return;
            out.push_back(current);
            return;
        }
        const std::uint32_t need = t - have;
        // Edge-count window: remaining picks can add at most need*have + C(need,2)
        // edges and at least zero.
        std::uint64_t max_add = std::uint64_t(need) * have + std::uint64_t(need) * (need - 1) / 2;
        if (edges_in > p.T() || edges_in + max_add < p.T()) return;
        for (std::uint32_t v = from; v < g.order(); ++v) {
            if (current.test(v)) continue;
            if (g.order() - v < need + count_fixed_above(v)) break;
            std::uint32_t gained = g.neighbors(v).intersection_count(current);
            if (check_degrees) {
                // An induced degree only grows while the set grows, and can
                // gain at most one per remaining pick.
                if (Rational(gained) > p.degree_hi()) continue;
                if (Rational(gained + (need - 1)) < p.degree_lo()) continue;
            }
            current.set(v);
            edges_in += gained;
            picked.push_back(v);
            extend(v + 1);
            picked.pop_back();
            edges_in -= gained;
            current.reset(v);
        }
    }

    // Members of U above the scan frontier still count toward the remaining quota.
    std::uint32_t count_fixed_above(std::uint32_t v) const {
        std::uint32_t c = 0;
        current.for_each([&](std::uint32_t u) {
            if (u >= v) ++c;
        });
        return c;
    }
};

std::vector<Bitset> scan_family(const Graph& g, const std::vector<std::uint32_t>& U,
                                const QuasicliqueParams& p, bool degrees, const SearchBudget& budget) {
    if (!(U.size() == 0 || U.size() == 2)) throw std::invalid_argument("|U| must be 0 or 2");
    if (p.t() > g.order()) return {};
    FamilyScan scan(g, p, degrees, budget);
    scan.run(U);
    return std::move(scan.out);
}

}  // namespace

std::vector<Bitset> enumerate_Q(const Graph& g, const std::vector<std::uint32_t>& U,
                                const QuasicliqueParams& p, const SearchBudget& budget) {
    return scan_family(g, U, p, true, budget);
}

std::vector<Bitset> relaxed_count_family(const Graph& g, const std::vector<std::uint32_t>& U,
                                         const QuasicliqueParams& p, const SearchBudget& budget) {
    return scan_family(g, U, p, false, budget);
}

Rational expected_count(const QuasicliqueParams& p, std::uint32_t l, std::uint32_t e_U) {
    if (!(l == 0 || l == 2)) throw std::invalid_argument("l must be 0 or 2");
    if (e_U > (l == 2 ? 1u : 0u)) throw std::invalid_argument("e(U) inconsistent with |U|");
    std::uint64_t tp = p.pair_count();
    std::uint64_t lp = std::uint64_t(l) * (l - (l ? 1 : 0)) / 2;  // C(l,2)
    Integer ways = binomial(p.n() - l, std::int64_t(p.t()) - l) *
                   binomial(tp - lp, std::int64_t(p.T()) - std::int64_t(e_U));
    return Rational(ways) * pow2_inv(tp - lp);
}

CountTriple expected_counts(const QuasicliqueParams& p) {
    return {expected_count(p, 0, 0), expected_count(p, 2, 1), expected_count(p, 2, 0)};
}

GoodnessReport check_alpha_t_good(const Graph& g, const QuasicliqueParams& p, double delta,
                                  const SearchBudget& budget) {
    GoodnessReport rep;
    rep.delta = delta;
    double a = p.alpha().get_d();
    rep.paper_delta = std::pow(double(g.order()), -QuasicliqueParams::A_const() * a * a);
    rep.expected = expected_counts(p);

    auto members = enumerate_Q(g, {}, p, budget);
    rep.q_total = members.size();

    const std::uint32_t n = g.order();
    std::vector<std::uint64_t> pair_count(std::size_t(n) * n, 0);
    for (const auto& S : members) {
        auto vs = S.to_vector();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) ++pair_count[std::size_t(vs[i]) * n + vs[j]];
    }

    auto deviation = [](std::uint64_t count, const Rational& target) {
        if (target == 0) return count == 0 ? 0.0 : std::numeric_limits<double>::infinity();
        return std::abs(double(count) / target.get_d() - 1.0);
    };

    rep.worst_global = deviation(rep.q_total, rep.expected.N0);
    if (rep.worst_global > delta) rep.pass = false;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
            std::uint64_t cnt = pair_count[std::size_t(u) * n + v];
            bool edge = g.has_edge(u, v);
            double dev = deviation(cnt, edge ? rep.expected.N1 : rep.expected.N2);
            (edge ? rep.worst_edge : rep.worst_non_edge) =
                std::max(edge ? rep.worst_edge : rep.worst_non_edge, dev);
            if (dev > delta) {
                rep.pass = false;
                if (rep.failing_pairs.size() < 16) rep.failing_pairs.push_back({u, v, cnt, dev});
            }
        }
    }
    return rep;
}

}  // namespace qcover
