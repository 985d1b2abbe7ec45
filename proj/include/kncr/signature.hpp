#pragma once

#include "kncr/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace kncr {

/// Vertex triple with i < j < k.
struct TripleId {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    friend bool operator==(const TripleId&, const TripleId&) = default;
};

/// An n-signature: one orientation per vertex triple, stored one bit per triple
/// (1 = '+') in lexicographic triple order.
class Signature {
public:
    Signature() = default;
    /// All triples '+' when `positive`, else all '-'.
    explicit Signature(std::uint32_t n, bool positive = true);

    std::uint32_t size() const { return n_; }
    std::uint64_t triple_count() const { return choose3(n_); }

    /// Lexicographic rank of (i, j, k), i < j < k < n.
    std::uint64_t rank(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
        return row_[i] - tail2_[j] + (k - j - 1);
    }

    bool bit(std::uint64_t r) const { return (words_[r >> 6] >> (r & 63)) & 1u; }
    void set_bit(std::uint64_t r, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (r & 63);
        if (v)
            words_[r >> 6] |= m;
        else
            words_[r >> 6] &= ~m;
    }

    /// +1 or -1 for a sorted triple.
    int sign(TripleId t) const { return bit(rank(t.i, t.j, t.k)) ? 1 : -1; }

    /// Orientation of three distinct vertices in any argument order (permutation parity applied).
    int orient(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
        int s = 1;
        if (a > b) { std::swap(a, b); s = -s; }
        if (b > c) { std::swap(b, c); s = -s; }
        if (a > b) { std::swap(a, b); s = -s; }
        return bit(rank(a, b, c)) ? s : -s;
    }

    void set(TripleId t, bool positive) { set_bit(rank(t.i, t.j, t.k), positive); }
    void toggle(TripleId t) {
        const std::uint64_t r = rank(t.i, t.j, t.k);
        words_[r >> 6] ^= std::uint64_t{1} << (r & 63);
    }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> row_;    // rank of (i, i+1, i+2) plus C(n-i-1, 2)
    std::vector<std::uint64_t> tail2_;  // C(n-j, 2)
};

/// Validates 0 <= i < j < k < n and throws DomainError otherwise.
TripleId make_triple(std::uint32_t n, std::uint32_t i, std::uint32_t j, std::uint32_t k);

/// Vertices in convex position, counterclockwise by index.
Signature convex_signature(std::uint32_t n);

/// Crossings of a realizable signature: 4-subsets in convex position, via rotation sweeps.
CrossingCount count_crossings_sig(const Signature& d);

/// Definition-level counter: crossing index pairs (a,b),(c,d) over every 4-subset. O(n^4).
CrossingCount count_crossings_sig_brute(const Signature& d);

/// Per-vertex crossing involvement of a realizable signature.
std::vector<CrossingCount> crossings_involving_sig(const Signature& d);

/// Realizability as a pseudolinear drawing: every 5-subset (4-subset for n = 4) must induce
/// a signature realizable by points.
bool is_realizable(const Signature& d);

/// Checks only the 5-subsets that contain both a and b.
bool realizable_containing(const Signature& d, std::uint32_t a, std::uint32_t b);

Signature flip(const Signature& d, TripleId t);

/// is_realizable(flip(d, t)) for realizable d; only 5-subsets containing t are re-checked.
bool realizable_after_flip(const Signature& d, TripleId t);

/// Change of the crossing count caused by flipping t (realizable d and flip(d, t)).
std::int64_t flip_crossing_delta(const Signature& d, TripleId t);

Signature delete_vertex(const Signature& d, std::uint32_t v);
Signature delete_vertices(const Signature& d, std::vector<std::uint32_t> vs);

/// Entry v is count_crossings_sig(delete_vertex(d, v)).
std::vector<CrossingCount> removal_values_sig(const Signature& d);

/// Rotation around v: the other vertices in counterclockwise order starting at the lowest
/// index. Requires a realizable signature.
std::vector<std::uint32_t> rotation_order(const Signature& d, std::uint32_t v);

namespace catalog {
/// Realizable 5-vertex signatures, indexed by the 10-bit lexicographic sign code.
bool realizable5(unsigned code);
/// Realizable 4-vertex signatures, indexed by the 4-bit lexicographic sign code.
bool realizable4(unsigned code);
}  // namespace catalog

}  // namespace kncr
