#pragma once

#include "kncr/geometry.hpp"
#include "kncr/halving.hpp"
#include "kncr/kind.hpp"
#include "kncr/signature.hpp"

#include <cstdint>
#include <string_view>
#include <utility>

namespace kncr {

/// How much of the doubled signature's realizability was checked.
enum class RealizabilityCheck {
    full,   // every 5-subset
    pairs,  // 5-subsets containing a copy pair; exact when the input is realizable
    none,   // too large; the crossing-count gate alone was applied
};

std::string_view check_name(RealizabilityCheck c);

/// Emitted only after the output count equals the prediction.
struct DoublingReport {
    DrawingKind kind = DrawingKind::rectilinear;
    std::uint64_t input_n = 0;
    CrossingCount input_crossings;
    std::uint64_t output_n = 0;
    CrossingCount output_crossings;
    CrossingCount predicted_crossings;
    Integer scale_used;  // magnification for points, 0 for signatures
    unsigned retries = 0;
    RealizabilityCheck realizability = RealizabilityCheck::full;
};

struct DoublingOptions {
    unsigned retry_limit = 64;
    std::uint32_t full_check_limit = 64;    // output sizes up to this get is_realizable
    std::uint32_t pair_check_limit = 256;   // then the copy-pair check up to this size
};

/// Vertex i becomes 2i = L p_i + v_i and 2i+1 = L p_i - v_i. L starts at 4 n max|v|; after a
/// failed check it doubles, jumping at once to a scale that provably fixes every orientation
/// (16 max|p| max|v| + 8 max|v|^2 + 1) if that is larger.
std::pair<PointSet, DoublingReport> double_points(const PointSet& s, const HalvingMatching& m,
                                                  const DoublingOptions& opts = {});

/// Vertex i becomes 2i (the copy displaced along i's line direction) and 2i+1. Two-vertex
/// lines give the pseudolinear recurrence, rotation slots the rectilinear one.
std::pair<Signature, DoublingReport> double_signature(const Signature& d, const HalvingMatching& m,
                                                      const DoublingOptions& opts = {});

}  // namespace kncr
