#pragma once

#include "kncr/integer.hpp"
#include "kncr/kind.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace kncr {

/// Exact upper bound on the rectilinear (q*) or pseudolinear crossing constant.
struct BoundValue {
    DrawingKind kind = DrawingKind::rectilinear;
    Rational value;  // canonical: lowest terms, positive denominator

    /// "num/den" in decimal.
    std::string str() const;
    static BoundValue parse(DrawingKind kind, std::string_view text);

    friend bool operator==(const BoundValue& a, const BoundValue& b) {
        return a.kind == b.kind && a.value == b.value;
    }
};

/// (24 cr + 3n^3 - 7n^2 + (30/7) n) / n^4 for a point set with a halving matching.
BoundValue rect_bound(std::uint64_t n, const CrossingCount& cr);

/// Parity-dependent pseudolinear bound; equals rect_bound for even n.
BoundValue pseudo_bound(std::uint64_t n, const CrossingCount& cr);

BoundValue bound_for(DrawingKind kind, std::uint64_t n, const CrossingCount& cr);

/// Harary-Hill number (1/4) floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2).
CrossingCount harary_hill(std::uint64_t n);

/// Crossings after one doubling step of a drawing of K_n with cr crossings.
CrossingCount predicted_double(DrawingKind kind, std::uint64_t n, const CrossingCount& cr);

}  // namespace kncr
