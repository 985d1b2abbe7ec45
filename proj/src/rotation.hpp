#pragma once

// Angular sweeps around a center vertex, shared by the geometric and the signature
// counters. A Side functor answers side(b, c) = sign of orient(center, b, c).

#include "kncr/errors.hpp"
#include "kncr/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace kncr::detail {

struct Rotation {
    std::uint32_t center = 0;
    /// Counterclockwise order of the other vertices, starting at the lowest index.
    std::vector<std::uint32_t> order;
    /// run[i]: number of vertices strictly inside the half-turn counterclockwise after order[i].
    std::vector<std::uint32_t> run;
    /// Positions [1, right_begin) lie counterclockwise of order[0], [right_begin, m) clockwise.
    std::size_t right_begin = 0;
};

/// `others` must be sorted ascending and must not contain the center.
template <class Side>
void build_rotation(std::uint32_t center, std::span<const std::uint32_t> others, const Side& side,
                    Rotation& out) {
    out.center = center;
    auto& order = out.order;
    order.clear();
    const std::size_t m = others.size();
    if (m == 0) {
        out.run.clear();
        out.right_begin = 0;
        return;
    }
    const std::uint32_t ref = others[0];
    order.assign(others.begin(), others.end());
    const auto mid = std::partition(order.begin() + 1, order.end(), [&](std::uint32_t x) {
        const int s = side(ref, x);
        if (s == 0) throw GeneralPositionError(center, ref, x);
        return s > 0;
    });
    out.right_begin = static_cast<std::size_t>(mid - order.begin());
    auto ccw = [&](std::uint32_t a, std::uint32_t b) { return side(a, b) > 0; };
    // stable_sort stays memory safe even if a malformed signature breaks transitivity.
    std::stable_sort(order.begin() + 1, order.begin() + out.right_begin, ccw);
    std::stable_sort(order.begin() + out.right_begin, order.end(), ccw);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (i + 1 == out.right_begin) continue;
        if (side(order[i], order[i + 1]) == 0) throw GeneralPositionError(center, order[i], order[i + 1]);
    }

    auto& run = out.run;
    run.assign(m, 0);
    std::size_t end = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (end < i + 1) end = i + 1;
        while (end < i + m) {
            const int s = side(order[i], order[end % m]);
            if (s > 0) {
                ++end;
                continue;
            }
            if (s == 0) throw GeneralPositionError(center, order[i], order[end % m]);
            break;
        }
        run[i] = static_cast<std::uint32_t>(end - i - 1);
    }
}

/// Number of triangles on the other vertices that contain the center.
inline std::uint64_t triangles_around(const Rotation& rot) {
    std::uint64_t outside = 0;
    for (std::uint32_t k : rot.run) outside += choose2(k);
    return choose3(rot.order.size()) - outside;
}

/// Calls f(v, k) for every other vertex v, where k is the number of triangles with vertex v
/// (and two further non-center vertices) containing the center.
template <class F>
void for_each_vertex_share(const Rotation& rot, std::vector<std::uint64_t>& prefix, F&& f) {
    const std::size_t m = rot.order.size();
    prefix.assign(2 * m + 1, 0);
    for (std::size_t i = 0; i < 2 * m; ++i) prefix[i + 1] = prefix[i] + rot.run[i % m];
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t k = rot.run[i];
        f(rot.order[i], prefix[i + 1 + k] - prefix[i + 1] - choose2(k));
    }
}

}  // namespace kncr::detail
