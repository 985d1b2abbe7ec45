#pragma once

#include "kncr/geometry.hpp"
#include "kncr/signature.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kncr {

struct Direction {
    Integer dx;
    Integer dy;

    friend bool operator==(const Direction&, const Direction&) = default;
};

/// A direction through a signature vertex, as a pair of opposite gaps in its rotation
/// (see rotation_order). The vertices order[gap+1 .. gap+(n-1)/2] lie to the left.
struct RotationSlot {
    std::uint32_t vertex = 0;
    std::uint32_t gap_position = 0;
    std::uint32_t opposite_gap = 0;

    friend bool operator==(const RotationSlot&, const RotationSlot&) = default;
};

/// A line through `anchor`. Lines through two vertices carry `partner`. Geometric lines carry
/// `direction` (partner - anchor when a partner exists); combinatorial odd lines carry `slot`.
struct HalvingLine {
    std::uint32_t anchor = 0;
    std::optional<std::uint32_t> partner;
    std::optional<Direction> direction;
    std::optional<RotationSlot> slot;

    friend bool operator==(const HalvingLine&, const HalvingLine&) = default;
};

/// assignments[v] is the line assigned to vertex v, anchored at v.
struct HalvingMatching {
    std::vector<HalvingLine> assignments;

    std::size_t size() const { return assignments.size(); }
    friend bool operator==(const HalvingMatching&, const HalvingMatching&) = default;
};

/// Chooses one of `count` balancing classes at a vertex. Geometric classes are ordered by
/// angle from the positive x-axis, combinatorial ones by gap position. Empty = first.
using GapPolicy = std::function<std::size_t(std::uint32_t vertex, std::size_t count)>;

/// Even n: all halving pairs. Odd n: one line per balancing gap per vertex.
std::vector<HalvingLine> halving_lines(const PointSet& s);

/// Odd n: all balancing directions at v, by angle from the positive x-axis.
std::vector<Direction> balancing_directions(const PointSet& s, std::uint32_t v);

/// Odd n: a balancing direction at v, the sum of the two rays bounding the chosen gap.
Direction halving_direction(const PointSet& s, std::uint32_t v, const GapPolicy& policy = {});

/// nullopt when no halving matching exists (possible for even n only).
std::optional<HalvingMatching> halving_matching(const PointSet& s, const GapPolicy& policy = {});

/// How odd-n signature vertices get their lines.
enum class OddLineRule {
    /// Pseudolines through two vertices splitting the other n-2 as (n-1)/2 and (n-3)/2,
    /// assigned injectively. Doubling then follows the pseudolinear recurrence.
    edges,
    /// Balancing rotation slots through one vertex. Doubling follows the rectilinear recurrence.
    slots,
};

std::vector<HalvingLine> halving_lines_sig(const Signature& d, OddLineRule rule = OddLineRule::edges);

std::optional<HalvingMatching> halving_matching_sig(const Signature& d, OddLineRule rule = OddLineRule::edges,
                                                    const GapPolicy& policy = {});

/// Side counts by direct orientation tests. Each checks only what its model uses: the point
/// version ignores slots, the signature version ignores directions.
bool verify_halving_line(const PointSet& s, const HalvingLine& line);
bool verify_halving_line_sig(const Signature& d, const HalvingLine& line);

/// Every vertex has a valid line through it and no two-vertex line is used twice.
bool verify_matching(const PointSet& s, const HalvingMatching& m);
bool verify_matching_sig(const Signature& d, const HalvingMatching& m);

/// Adds rotation slots to the one-vertex lines of a geometric matching, so that the
/// matching can drive a signature doubling of signature_of(s).
HalvingMatching attach_slots(const PointSet& s, HalvingMatching m);

/// Vertices left of the line of `m.assignments[v]`; the partner itself is excluded.
std::vector<std::uint32_t> left_side_sig(const Signature& d, const HalvingLine& line);

/// One line per vertex: "v : w dx dy", "v : - dx dy", "v : slot g g'" or "v : w". A direction
/// line that also carries a slot ends in "slot g g'".
std::string dump_matching(const HalvingMatching& m);
HalvingMatching parse_matching(std::string_view text);

}  // namespace kncr
