#include "kncr/signature.hpp"

#include "kncr/errors.hpp"
#include "sig_view.hpp"
#include "sweep.hpp"

#include <algorithm>

namespace kncr {

Signature::Signature(std::uint32_t n, bool positive) : n_(n), row_(n), tail2_(n) {
    const std::uint64_t total = choose3(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        row_[i] = total - choose3(n - i) + choose2(n - 1 - i);
        tail2_[i] = choose2(n - i);
    }
    words_.assign((total + 63) / 64, positive ? ~std::uint64_t{0} : 0);
    if (positive && total % 64 != 0) words_.back() = (std::uint64_t{1} << (total % 64)) - 1;
}

TripleId make_triple(std::uint32_t n, std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    if (!(i < j && j < k && k < n)) throw DomainError("triple indices must satisfy i < j < k < n");
    return {i, j, k};
}

Signature convex_signature(std::uint32_t n) {
    if (n < 3) throw DomainError("a signature needs at least 3 vertices");
    return Signature(n, true);
}

namespace {

using detail::SigView;

detail::SweepTotals sweep_signature(const Signature& d, bool per_vertex) {
    return detail::sweep_all(d.size(), [&] { return SigView{&d, 0}; }, per_vertex);
}

// Convex position of a sorted 4-subset in a realizable signature: even number of '-'.
bool convex4(const Signature& d, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t e) {
    const bool p = d.bit(d.rank(a, b, c)) ^ d.bit(d.rank(a, b, e)) ^ d.bit(d.rank(a, c, e)) ^
                   d.bit(d.rank(b, c, e));
    return !p;
}

// 10-bit lexicographic code of a sorted 5-subset; the triple of rank `flipped` reads negated.
unsigned code5(const Signature& d, const std::uint32_t (&v)[5], std::uint64_t flipped) {
    static constexpr std::uint8_t kTriples[10][3] = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
                                                      {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    unsigned code = 0;
    for (unsigned t = 0; t < 10; ++t) {
        const std::uint64_t r = d.rank(v[kTriples[t][0]], v[kTriples[t][1]], v[kTriples[t][2]]);
        code |= static_cast<unsigned>(d.bit(r) ^ (r == flipped)) << t;
    }
    return code;
}

constexpr std::uint64_t kNoFlip = ~std::uint64_t{0};

}  // namespace

CrossingCount count_crossings_sig(const Signature& d) {
    const std::uint32_t n = d.size();
    if (n < 4) return 0;
    return to_integer(choose4(n) - sweep_signature(d, false).inside);
}

CrossingCount count_crossings_sig_brute(const Signature& d) {
    const std::uint32_t n = d.size();
    std::uint64_t total = 0;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                for (std::uint32_t e = c + 1; e < n; ++e) {
                    // Edges xy and zw cross iff z, w lie on opposite sides of xy and vice versa.
                    auto crosses = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z, std::uint32_t w) {
                        return d.orient(x, y, z) != d.orient(x, y, w) && d.orient(z, w, x) != d.orient(z, w, y);
                    };
                    total += crosses(a, b, c, e) + crosses(a, c, b, e) + crosses(a, e, b, c);
                }
    return to_integer(total);
}

std::vector<CrossingCount> crossings_involving_sig(const Signature& d) {
    const std::uint32_t n = d.size();
    std::vector<CrossingCount> out(n);
    if (n < 4) return out;
    const auto totals = sweep_signature(d, true);
    for (std::uint32_t v = 0; v < n; ++v) out[v] = to_integer(choose3(n - 1) - totals.nonconvex[v]);
    return out;
}

std::vector<CrossingCount> removal_values_sig(const Signature& d) {
    const std::uint32_t n = d.size();
    if (n < 4) throw DomainError("removal values need at least 4 vertices");
    const auto totals = sweep_signature(d, true);
    const std::uint64_t total = choose4(n) - totals.inside;
    std::vector<CrossingCount> out(n);
    for (std::uint32_t v = 0; v < n; ++v) out[v] = to_integer(total - (choose3(n - 1) - totals.nonconvex[v]));
    return out;
}

bool is_realizable(const Signature& d) {
    const std::uint32_t n = d.size();
    if (n < 4) return true;
    if (n == 4) {
        unsigned code = 0;
        for (unsigned r = 0; r < 4; ++r) code |= static_cast<unsigned>(d.bit(r)) << r;
        return catalog::realizable4(code);
    }
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                for (std::uint32_t e = c + 1; e < n; ++e)
                    for (std::uint32_t f = e + 1; f < n; ++f) {
                        const std::uint32_t v[5] = {a, b, c, e, f};
                        if (!catalog::realizable5(code5(d, v, kNoFlip))) return false;
                    }
    return true;
}

bool realizable_containing(const Signature& d, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t n = d.size();
    if (a > b) std::swap(a, b);
    if (a == b || b >= n) throw DomainError("need two distinct vertices");
    if (n < 5) return is_realizable(d);
    std::vector<std::uint32_t> rest;
    for (std::uint32_t x = 0; x < n; ++x)
        if (x != a && x != b) rest.push_back(x);
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j)
            for (std::size_t k = j + 1; k < rest.size(); ++k) {
                std::uint32_t v[5] = {a, b, rest[i], rest[j], rest[k]};
                std::sort(v, v + 5);
                if (!catalog::realizable5(code5(d, v, kNoFlip))) return false;
            }
    return true;
}

Signature flip(const Signature& d, TripleId t) {
    Signature out = d;
    out.toggle(t);
    return out;
}

bool realizable_after_flip(const Signature& d, TripleId t) {
    const std::uint32_t n = d.size();
    if (n < 4) return true;
    if (n == 4) return is_realizable(flip(d, t));
    const std::uint64_t flipped = d.rank(t.i, t.j, t.k);
    // Only 5-subsets containing the whole triple see the changed sign.
    for (std::uint32_t x = 0; x < n; ++x) {
        if (x == t.i || x == t.j || x == t.k) continue;
        for (std::uint32_t y = x + 1; y < n; ++y) {
            if (y == t.i || y == t.j || y == t.k) continue;
            std::uint32_t v[5] = {t.i, t.j, t.k, x, y};
            std::sort(v, v + 5);
            if (!catalog::realizable5(code5(d, v, flipped))) return false;
        }
    }
    return true;
}

std::int64_t flip_crossing_delta(const Signature& d, TripleId t) {
    std::int64_t delta = 0;
    for (std::uint32_t x = 0; x < d.size(); ++x) {
        if (x == t.i || x == t.j || x == t.k) continue;
        std::uint32_t v[4] = {t.i, t.j, t.k, x};
        std::sort(v, v + 4);
        // A single sign change toggles the convexity of every 4-subset containing the triple.
        delta += convex4(d, v[0], v[1], v[2], v[3]) ? -1 : 1;
    }
    return delta;
}

Signature delete_vertices(const Signature& d, std::vector<std::uint32_t> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (auto v : vs)
        if (v >= d.size()) throw DomainError("vertex index out of range");
    if (d.size() - vs.size() < 3) throw DomainError("deletion would leave fewer than 3 vertices");
    std::vector<std::uint32_t> keep;
    for (std::uint32_t v = 0; v < d.size(); ++v)
        if (!std::binary_search(vs.begin(), vs.end(), v)) keep.push_back(v);
    const auto m = static_cast<std::uint32_t>(keep.size());
    Signature out(m, false);
    std::uint64_t r = 0;
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j) {
            const std::uint64_t base = d.rank(keep[i], keep[j], keep[j] + 1) - (keep[j] + 1);
            for (std::uint32_t k = j + 1; k < m; ++k, ++r)
                if (d.bit(base + keep[k])) out.set_bit(r, true);
        }
    return out;
}

Signature delete_vertex(const Signature& d, std::uint32_t v) {
    if (d.size() <= 3) throw DomainError("cannot delete a vertex from a signature with 3 or fewer vertices");
    return delete_vertices(d, {v});
}

std::vector<std::uint32_t> rotation_order(const Signature& d, std::uint32_t v) {
    std::vector<std::uint32_t> others;
    for (std::uint32_t u = 0; u < d.size(); ++u)
        if (u != v) others.push_back(u);
    detail::Rotation rot;
    detail::build_rotation(v, others, SigView{&d, v}, rot);
    return rot.order;
}

}  // namespace kncr
