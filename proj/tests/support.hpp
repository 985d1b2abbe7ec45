#pragma once
// Generators and definition-level oracles shared by the unit tests and the acceptance binary.
// Nothing here calls into the library's counting code.

#include "kncr/geometry.hpp"
#include "kncr/signature.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using kncr::Integer;
using kncr::Point;
using kncr::PointSet;

inline int sgn_impl(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline Integer cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline int turn(const Point& o, const Point& a, const Point& b) { return sgn_impl(cross(o, a, b)); }

inline bool in_general_position(const std::vector<Point>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (turn(pts[i], pts[j], pts[k]) == 0) return false;
    return true;
}

/// Uniform integer points in [-range, range]^2, resampled until in general position.
inline PointSet random_points(std::mt19937_64& rng, std::size_t n, std::int64_t range = 1000) {
    std::uniform_int_distribution<std::int64_t> coord(-range, range);
    for (;;) {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back({Integer(static_cast<long>(coord(rng))), Integer(static_cast<long>(coord(rng)))});
        if (in_general_position(pts)) return PointSet(pts);
    }
}

/// Points (i, i^2): convex position, listed left to right.
inline PointSet parabola(std::size_t n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const long x = static_cast<long>(i);
        pts.push_back({Integer(x), Integer(x * x)});
    }
    return PointSet(pts);
}

/// Regular-ish convex polygon: integer points on a large circle, counterclockwise.
inline PointSet convex_polygon(std::size_t n, double radius = 1000) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2 * 3.14159265358979323846 * static_cast<double>(i) / static_cast<double>(n);
        pts.push_back({Integer(static_cast<long>(std::lround(radius * std::cos(a)))),
                       Integer(static_cast<long>(std::lround(radius * std::sin(a))))});
    }
    return PointSet(pts);
}

/// Segments pq and rs cross in their interiors (general position assumed).
inline bool crossing(const Point& p, const Point& q, const Point& r, const Point& s) {
    return turn(p, q, r) != turn(p, q, s) && turn(r, s, p) != turn(r, s, q);
}

/// Count over all unordered pairs of vertex-disjoint segments.
inline Integer brute_crossings(const PointSet& s) {
    const std::size_t n = s.size();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    long c = 0;
    for (std::size_t a = 0; a < edges.size(); ++a)
        for (std::size_t b = a + 1; b < edges.size(); ++b) {
            const auto [i, j] = edges[a];
            const auto [k, l] = edges[b];
            if (i == k || i == l || j == k || j == l) continue;
            c += crossing(s[i], s[j], s[k], s[l]);
        }
    return Integer(c);
}

/// Four vertices of a signature are in convex position iff no one of them lies inside the
/// triangle of the other three; counted from orientations only.
inline bool convex4(const kncr::Signature& d, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t e) {
    const std::uint32_t v[4] = {a, b, c, e};
    for (int inner = 0; inner < 4; ++inner) {
        std::uint32_t t[3];
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != inner) t[k++] = v[i];
        const int o = d.orient(t[0], t[1], t[2]);
        if (d.orient(t[0], t[1], v[inner]) == o && d.orient(t[1], t[2], v[inner]) == o &&
            d.orient(t[2], t[0], v[inner]) == o)
            return false;
    }
    return true;
}

inline Integer brute_crossings_sig(const kncr::Signature& d) {
    const std::uint32_t n = d.size();
    long c = 0;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t x = b + 1; x < n; ++x)
                for (std::uint32_t y = x + 1; y < n; ++y) c += convex4(d, a, b, x, y);
    return Integer(c);
}

/// Signature built directly from orientation tests.
inline kncr::Signature brute_signature(const PointSet& s) {
    const auto n = static_cast<std::uint32_t>(s.size());
    kncr::Signature d(n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            for (std::uint32_t k = j + 1; k < n; ++k) d.set({i, j, k}, turn(s[i], s[j], s[k]) > 0);
    return d;
}

/// Vertices strictly left of the directed line a -> b.
inline std::size_t left_of(const PointSet& s, std::size_t a, std::size_t b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (i != a && i != b && turn(s[a], s[b], s[i]) > 0) ++c;
    return c;
}

/// Exhaustive search for an even-n halving matching: each vertex picks a distinct halving
/// segment through itself.
inline bool brute_has_matching(const PointSet& s) {
    const std::size_t n = s.size();
    std::vector<std::pair<std::size_t, std::size_t>> halving;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (2 * left_of(s, i, j) == n - 2) halving.emplace_back(i, j);
    std::vector<int> used(halving.size(), 0);
    auto rec = [&](auto&& self, std::size_t v) -> bool {
        if (v == n) return true;
        for (std::size_t e = 0; e < halving.size(); ++e) {
            if (used[e] || (halving[e].first != v && halving[e].second != v)) continue;
            used[e] = 1;
            if (self(self, v + 1)) return true;
            used[e] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("kncr-test-" + name + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testsupport
