#pragma once

#include "kncr/integer.hpp"
#include "kncr/signature.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace kncr {

struct Point {
    Integer x;
    Integer y;

    friend bool operator==(const Point&, const Point&) = default;
};

/// A rectilinear drawing of K_n: exact integer points, indices are vertex identities.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {}

    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    std::span<const Point> points() const { return points_; }

    PointSet with_replaced(std::size_t index, Point p) const;
    PointSet without(std::size_t index) const;
    PointSet without(std::span<const std::size_t> indices) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<Point> points_;
};

/// Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise, 0 collinear.
int orient(const Point& a, const Point& b, const Point& c);

/// True iff the open segments ab and cd cross. Throws GeneralPositionError if any three
/// of the four points are collinear.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d);

/// Throws GeneralPositionError naming a collinear triple, if any. O(n^2 log n).
void check_general_position(const PointSet& s);

/// Definition-level counter over all pairs of vertex-disjoint edges. O(n^4); test oracle.
CrossingCount count_crossings_brute(const PointSet& s);

/// cr(S) = C(n,4) - sum_p t(p), t(p) = triangles of S\{p} containing p, by angular sweeps.
CrossingCount count_crossings(const PointSet& s);

/// Number of crossings of the drawing in which vertex i takes part, for every i.
/// Sums to 4 cr(S).
std::vector<CrossingCount> crossings_involving(const PointSet& s);

/// Entry i is cr(S \ {p_i}). Requires n >= 4.
std::vector<CrossingCount> removal_values(const PointSet& s);

struct CandidateBatch {
    std::size_t anchor = 0;
    std::vector<Point> candidates;
};

/// Entry j is cr(S with the anchor moved to candidate j), or nullopt when the candidate
/// is collinear with two other points (or coincides with one).
std::vector<std::optional<CrossingCount>> evaluate_candidates(const PointSet& s,
                                                              const CandidateBatch& batch);

/// Triple orientations of the point set; always realizable.
Signature signature_of(const PointSet& s);

/// Largest absolute coordinate, used for scale decisions.
Integer max_abs_coordinate(const PointSet& s);

}  // namespace kncr
