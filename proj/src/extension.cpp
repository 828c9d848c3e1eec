#include "qcover/extension.hpp"

#include <stdexcept>

namespace qcover {

Bitset extension_set(const Graph& g, const Bitset& S, std::uint32_t j) {
    const std::uint32_t n = g.order();
    Bitset W(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (S.test(v)) continue;
        if (g.neighbors(v).intersection_count(S) == j) W.set(v);
    }
    return W;
}

ExtensionProfile extension_profile(const Graph& g, const Bitset& S, std::uint32_t j) {
    if (j > S.count()) throw std::invalid_argument("j must lie in 0..|S|");
    ExtensionProfile p;
    p.S = S;
    p.j = j;
    p.W = extension_set(g, S, j);
    S.for_each([&](std::uint32_t x) { p.per_x.emplace_back(x, p.W & g.neighbors(x)); });
    return p;
}

std::pair<Rational, Rational> mu_omega(std::uint32_t n, std::uint32_t s, std::uint32_t j) {
    if (s > n) throw std::invalid_argument("s must not exceed n");
    if (j > s) throw std::invalid_argument("j must lie in 0..s");
    Rational scale = Rational(n - s) * pow2_inv(s);
    Rational mu = scale * binomial(s, j);
    Rational omega = (j == 0) ? Rational(0) : scale * binomial(s - 1, std::int64_t(j) - 1);
    return {mu, omega};
}

}  // namespace qcover
