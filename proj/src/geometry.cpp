#include "kncr/geometry.hpp"

#include "kncr/errors.hpp"
#include "plane.hpp"
#include "sweep.hpp"

#include <algorithm>
#include <numeric>

namespace kncr {

PointSet PointSet::with_replaced(std::size_t index, Point p) const {
    PointSet out = *this;
    out.points_.at(index) = std::move(p);
    return out;
}

PointSet PointSet::without(std::size_t index) const {
    const std::size_t one[] = {index};
    return without(one);
}

PointSet PointSet::without(std::span<const std::size_t> indices) const {
    std::vector<Point> kept;
    kept.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (std::find(indices.begin(), indices.end(), i) == indices.end()) kept.push_back(points_[i]);
    return PointSet(std::move(kept));
}

int orient(const Point& a, const Point& b, const Point& c) {
    const Integer lhs = (b.x - a.x) * (c.y - a.y);
    const Integer rhs = (b.y - a.y) * (c.x - a.x);
    return sgn(lhs - rhs);
}

namespace {

// Crossing test with collinearity reported through the caller's vertex labels.
bool cross_checked(const Point& a, const Point& b, const Point& c, const Point& d,
                   std::uint32_t ia, std::uint32_t ib, std::uint32_t ic, std::uint32_t id) {
    const int abc = orient(a, b, c), abd = orient(a, b, d);
    const int cda = orient(c, d, a), cdb = orient(c, d, b);
    if (abc == 0) throw GeneralPositionError(ia, ib, ic);
    if (abd == 0) throw GeneralPositionError(ia, ib, id);
    if (cda == 0) throw GeneralPositionError(ic, id, ia);
    if (cdb == 0) throw GeneralPositionError(ic, id, ib);
    return abc != abd && cda != cdb;
}

std::uint32_t checked_size(const PointSet& s) {
    if (s.size() >= (1u << 16)) throw DomainError("point sets are limited to 65535 points");
    return static_cast<std::uint32_t>(s.size());
}

detail::SweepTotals sweep_points(const PointSet& s, bool per_vertex) {
    const std::uint32_t n = checked_size(s);
    return detail::with_plane(s.points(), 0, detail::fits_small(s.points()), [&](const auto& plane) {
        using View = typename std::decay_t<decltype(plane)>::View;
        return detail::sweep_all(n, [&] { return View(plane, 0); }, per_vertex);
    });
}

}  // namespace

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    return cross_checked(a, b, c, d, 0, 1, 2, 3);
}

void check_general_position(const PointSet& s) {
    if (s.size() == 3 && orient(s[0], s[1], s[2]) == 0) throw GeneralPositionError(0, 1, 2);
    if (s.size() > 3) sweep_points(s, false);
}

CrossingCount count_crossings_brute(const PointSet& s) {
    const std::uint32_t n = checked_size(s);
    if (n < 3) throw DomainError("counting needs at least 3 points");
    if (n == 3 && orient(s[0], s[1], s[2]) == 0) throw GeneralPositionError(0, 1, 2);
    std::uint64_t total = 0;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                for (std::uint32_t d = c + 1; d < n; ++d) {
                    total += cross_checked(s[a], s[b], s[c], s[d], a, b, c, d);
                    total += cross_checked(s[a], s[c], s[b], s[d], a, c, b, d);
                    total += cross_checked(s[a], s[d], s[b], s[c], a, d, b, c);
                }
    return to_integer(total);
}

CrossingCount count_crossings(const PointSet& s) {
    const std::uint32_t n = checked_size(s);
    if (n < 3) throw DomainError("counting needs at least 3 points");
    if (n == 3) {
        check_general_position(s);
        return 0;
    }
    const auto totals = sweep_points(s, false);
    return to_integer(choose4(n) - totals.inside);
}

std::vector<CrossingCount> crossings_involving(const PointSet& s) {
    const std::uint32_t n = checked_size(s);
    if (n < 3) throw DomainError("counting needs at least 3 points");
    check_general_position(s);
    std::vector<CrossingCount> out(n);
    if (n == 3) return out;
    const auto totals = sweep_points(s, true);
    for (std::uint32_t v = 0; v < n; ++v) out[v] = to_integer(choose3(n - 1) - totals.nonconvex[v]);
    return out;
}

std::vector<CrossingCount> removal_values(const PointSet& s) {
    const std::uint32_t n = checked_size(s);
    if (n < 4) throw DomainError("removal values need at least 4 points");
    const auto totals = sweep_points(s, true);
    const std::uint64_t total = choose4(n) - totals.inside;
    std::vector<CrossingCount> out(n);
    for (std::uint32_t v = 0; v < n; ++v)
        out[v] = to_integer(total - (choose3(n - 1) - totals.nonconvex[v]));
    return out;
}

namespace {

// Rotation of S \ {anchor, q} around q, with prefix sums of the half-turn runs.
struct CenterTable {
    std::vector<std::uint32_t> order;
    std::vector<std::uint64_t> prefix;  // over the doubled run array
    std::size_t right_begin = 0;
};

template <class Plane>
std::vector<std::optional<CrossingCount>> evaluate_with(const Plane& base_plane, std::uint32_t n,
                                                        std::uint32_t anchor,
                                                        std::span<const Point> candidates) {
    using View = typename Plane::View;
    const std::uint32_t slot = n;  // candidate index in the plane
    std::vector<std::uint32_t> kept;
    for (std::uint32_t v = 0; v < n; ++v)
        if (v != anchor) kept.push_back(v);
    const std::uint64_t m = kept.size();

    std::vector<CenterTable> tables(n);
    auto prep = detail::parallel_tasks(
        kept.size(),
        [&] { return std::make_tuple(View(base_plane, 0), detail::Rotation{}, std::vector<std::uint32_t>{},
                                     std::uint64_t{0}); },
        [&](auto& st, std::size_t task) {
            auto& [view, rot, others, inside] = st;
            const std::uint32_t q = kept[task];
            others.clear();
            for (std::uint32_t v : kept)
                if (v != q) others.push_back(v);
            view.recenter(q);
            detail::build_rotation(q, others, view, rot);
            inside += detail::triangles_around(rot);
            auto& tab = tables[q];
            const std::size_t mq = rot.order.size();
            tab.order = rot.order;
            tab.right_begin = rot.right_begin;
            tab.prefix.assign(2 * mq + 1, 0);
            for (std::size_t i = 0; i < 2 * mq; ++i) tab.prefix[i + 1] = tab.prefix[i] + rot.run[i % mq];
        });
    std::uint64_t inside = 0;
    for (auto& st : prep) inside += std::get<3>(st);
    const std::uint64_t base = choose4(m) - inside;

    std::vector<std::optional<CrossingCount>> out(candidates.size());
    detail::parallel_tasks(
        candidates.size(),
        [&] { return std::make_tuple(Plane(base_plane), detail::Rotation{}); },
        [&](auto& st, std::size_t j) {
            auto& [plane, rot] = st;
            plane.set(slot, candidates[j]);
            View around(plane, slot);
            try {
                detail::build_rotation(slot, kept, around, rot);
            } catch (const GeneralPositionError&) {
                return;
            }
            std::uint64_t nonconvex = detail::triangles_around(rot);
            for (std::uint32_t q : kept) {
                const auto& tab = tables[q];
                const std::size_t mq = tab.order.size();
                if (mq < 2) continue;
                auto before_c = [&](std::uint32_t x) { return plane.orient(q, x, slot) > 0; };
                std::size_t pos;
                if (plane.orient(q, tab.order[0], slot) > 0) {
                    pos = std::partition_point(tab.order.begin() + 1, tab.order.begin() + tab.right_begin, before_c) -
                          tab.order.begin();
                } else {
                    pos = std::partition_point(tab.order.begin() + tab.right_begin, tab.order.end(), before_c) -
                          tab.order.begin();
                }
                pos %= mq;
                // Length of the run of vertices within the half-turn after the candidate.
                std::size_t lo = 0, hi = mq;
                while (lo < hi) {
                    const std::size_t mid = (lo + hi) / 2;
                    if (plane.orient(q, slot, tab.order[(pos + mid) % mq]) > 0)
                        lo = mid + 1;
                    else
                        hi = mid;
                }
                nonconvex += tab.prefix[pos + lo] - tab.prefix[pos] - choose2(lo);
            }
            out[j] = to_integer(base + choose3(m) - nonconvex);
        });
    return out;
}

}  // namespace

std::vector<std::optional<CrossingCount>> evaluate_candidates(const PointSet& s, const CandidateBatch& batch) {
    const std::uint32_t n = checked_size(s);
    if (n < 3) throw DomainError("counting needs at least 3 points");
    if (batch.anchor >= n) throw DomainError("anchor index out of range");
    bool small = detail::fits_small(s.points());
    for (const auto& c : batch.candidates) small = small && detail::fits_small(c.x) && detail::fits_small(c.y);
    return detail::with_plane(s.points(), 1, small, [&](const auto& plane) {
        return evaluate_with(plane, n, static_cast<std::uint32_t>(batch.anchor), batch.candidates);
    });
}

Signature signature_of(const PointSet& s) {
    const std::uint32_t n = checked_size(s);
    if (n < 3) throw DomainError("signatures need at least 3 points");
    Signature d(n);
    detail::with_plane(s.points(), 0, detail::fits_small(s.points()), [&](const auto& plane) {
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j)
                for (std::uint32_t k = j + 1; k < n; ++k, ++r) {
                    const int o = plane.orient(i, j, k);
                    if (o == 0) throw GeneralPositionError(i, j, k);
                    d.set_bit(r, o > 0);
                }
        return 0;
    });
    return d;
}

Integer max_abs_coordinate(const PointSet& s) {
    Integer m = 0;
    for (const auto& p : s.points()) {
        if (abs(p.x) > m) m = abs(p.x);
        if (abs(p.y) > m) m = abs(p.y);
    }
    return m;
}

}  // namespace kncr
