#pragma once

#include "kncr/geometry.hpp"
#include "kncr/signature.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace kncr {

struct SearchBudget {
    std::optional<double> wall_time;  // seconds
    std::optional<std::uint64_t> max_steps;
    std::uint64_t rng_seed = 0;
    /// Stop as soon as the count is at most this.
    std::optional<CrossingCount> target;
};

struct NeighborhoodState {
    Rational radius{1, 4};  // half-side of the sampling square, relative to the bounding-box diagonal
    Rational shrink_factor{1, 2};
    std::uint64_t stall_threshold = 0;  // 0: 50 n
    Rational min_radius{1, 1 << 20};    // below this the radius restarts at its initial value
};

/// Called after every step with (step, current count, best count).
using ProgressFn = std::function<void(std::uint64_t, const CrossingCount&, const CrossingCount&)>;

template <class Drawing>
struct SearchResult {
    Drawing drawing;
    CrossingCount crossings;
    std::uint64_t steps = 0;
};

/// Moves a random vertex to the best of n random integer points around it, if that is no worse.
SearchResult<PointSet> random_relocation(const PointSet& s, const SearchBudget& budget,
                                         NeighborhoodState nbhd = {}, const ProgressFn& progress = {});

struct CellWalkOptions {
    /// Try this many ray directions per step and take the one with the smallest change.
    unsigned greedy_tries = 1;
};

/// Walks vertex v through the cells of the arrangement of lines spanned by the other points,
/// one crossed line per step, and returns the set with v at the best cell visited. Other
/// coordinates are scaled by the same power of two that makes v's position integral.
SearchResult<PointSet> cell_walk(const PointSet& s, std::uint32_t v, const SearchBudget& budget,
                                 const CellWalkOptions& opts = {}, const ProgressFn& progress = {});

/// Repeated cell walks of `walk_steps` steps from random vertices; keeps a walk's result when it
/// is no worse than the current set.
SearchResult<PointSet> cell_walk_search(const PointSet& s, const SearchBudget& budget, std::uint64_t walk_steps = 0,
                                        const CellWalkOptions& opts = {}, const ProgressFn& progress = {});

/// Flips random triples, keeping a flip when the result is realizable and no worse.
SearchResult<Signature> sig_flip_search(const Signature& d, const SearchBudget& budget,
                                        const ProgressFn& progress = {});

/// Called with each intermediate drawing and its crossing count.
template <class Drawing>
using ShrinkSink = std::function<void(const Drawing&, const CrossingCount&)>;

/// Greedily removes the tuple_size-subset whose removal leaves the fewest crossings
/// (lexicographically first on ties) until target_n vertices remain.
SearchResult<PointSet> shrink(const PointSet& s, std::uint32_t target_n, unsigned tuple_size,
                              const ShrinkSink<PointSet>& sink = {});
SearchResult<Signature> shrink(const Signature& d, std::uint32_t target_n, unsigned tuple_size,
                               const ShrinkSink<Signature>& sink = {});

}  // namespace kncr
