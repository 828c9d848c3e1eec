#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace qcover {

// Dynamic bitset over a fixed universe [0, n). Adjacency rows and vertex
// subsets both use this; |N(v) ∩ S| is one intersection_count call.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static Bitset of(std::uint32_t n, std::initializer_list<std::uint32_t> bits) {
        Bitset b(n);
        for (auto v : bits) b.set(v);
        return b;
    }
    static Bitset full(std::uint32_t n) {
        Bitset b(n);
        for (std::uint32_t v = 0; v < n; ++v) b.set(v);
        return b;
    }

    std::uint32_t universe() const { return n_; }

    void set(std::uint32_t v) { words_[v >> 6] |= std::uint64_t(1) << (v & 63); }
    void reset(std::uint32_t v) { words_[v >> 6] &= ~(std::uint64_t(1) << (v & 63)); }
    bool test(std::uint32_t v) const { return (words_[v >> 6] >> (v & 63)) & 1; }

    std::uint32_t count() const {
        std::uint32_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    std::uint32_t intersection_count(const Bitset& other) const {
        std::uint32_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
        return c;
    }
    bool intersects(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && words_ == o.words_; }
    // Total order used to keep multisets canonical.
    bool operator<(const Bitset& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (std::size_t i = words_.size(); i-- > 0;)
            if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
        return false;
    }

    // First set bit at position >= from, or universe() if none.
    std::uint32_t next_set(std::uint32_t from) const {
        if (from >= n_) return n_;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (w) {
                std::uint32_t v = std::uint32_t(wi * 64 + std::countr_zero(w));
                return v < n_ ? v : n_;
            }
            if (++wi >= words_.size()) return n_;
            w = words_[wi];
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::uint32_t v = next_set(0); v < n_; v = next_set(v + 1)) fn(v);
    }

    std::vector<std::uint32_t> to_vector() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::uint32_t v) { out.push_back(v); });
        return out;
    }
    static Bitset from_vector(std::uint32_t n, const std::vector<std::uint32_t>& vs) {
        Bitset b(n);
        for (auto v : vs) b.set(v);
        return b;
    }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace qcover
