#pragma once

#include "kncr/bounds.hpp"
#include "kncr/kind.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kncr {

struct PipelineConfig {
    std::vector<DrawingKind> kinds{DrawingKind::rectilinear, DrawingKind::pseudolinear};
    unsigned top_k = 3;  // records per kind optimized each round, by bound

    // Per-task heuristic budgets; a task stops at whichever limit comes first.
    double relocate_seconds = 2.0;
    std::uint64_t relocate_steps = 2000;
    double cellwalk_seconds = 1.0;
    std::uint64_t cellwalk_steps = 500;
    double flip_seconds = 2.0;
    std::uint64_t flip_steps = 20000;
    double limited_seconds = 0.25;  // per drawing after a doubling

    double stall_window = 600.0;     // seconds without a best-bound improvement before doubling
    std::uint32_t shrink_target = 0; // 0: one more than the size before doubling
    unsigned shrink_tuple = 1;
    std::uint32_t max_n = 256;       // never double beyond this output size
    std::uint32_t realizability_limit = 48;  // registry check for signatures up to this size

    unsigned worker_count = 0;  // 0: hardware concurrency
    std::filesystem::path registry_path = "registry";
    std::filesystem::path run_log;  // default: <registry>/run.jsonl
    std::uint64_t seed = 1;
    double wall_time = 3600.0;  // total run time in seconds
};

/// Reads a JSON object whose keys mirror PipelineConfig; missing keys keep their defaults.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const std::string& json_text);

struct RunReport {
    std::uint64_t rounds = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t doublings = 0;
    std::uint64_t matching_failures = 0;
    std::vector<std::pair<DrawingKind, std::optional<BoundValue>>> final_best;
};

/// Optimize, and when a kind stalls, double its best drawing, shrink the result through all
/// intermediate sizes and briefly optimize those. Resumes from whatever the registry holds;
/// an empty registry is seeded with the triangle and the 3-vertex signature. Every event is
/// appended to the run log as one JSON object per line.
RunReport orchestrate(const PipelineConfig& cfg, const std::atomic<bool>* cancel = nullptr);

}  // namespace kncr
