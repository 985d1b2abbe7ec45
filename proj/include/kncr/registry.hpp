#pragma once

#include "kncr/bounds.hpp"
#include "kncr/geometry.hpp"
#include "kncr/kind.hpp"
#include "kncr/signature.hpp"

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace kncr {

struct DrawingRecord {
    DrawingKind kind = DrawingKind::rectilinear;
    std::uint32_t n = 0;
    CrossingCount crossings;
    BoundValue bound;
    /// Inside the registry: relative to its root. For submissions: any readable file.
    std::filesystem::path payload_path;
    std::string provenance;
    std::string created_at;  // UTC, ISO 8601
    bool has_halving_matching = false;
};

struct SubmitResult {
    bool accepted = false;
    std::string reason;  // empty when accepted
    std::optional<DrawingRecord> record;
};

struct FsckReport {
    std::size_t checked = 0;
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

struct ImportReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::vector<std::string> reasons;
};

/// Best-known drawing per (kind, n): "rect/n<N>.pts", "pseudo/n<N>.sig" and index.json.
/// Submissions are serialized; every write is atomic.
class Registry {
public:
    /// Creates the directory layout when missing.
    explicit Registry(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    /// Re-counts the payload, recomputes the bound and checks realizability before comparing.
    /// Accepted iff there is no record for (kind, n) or the payload has strictly fewer
    /// crossings, and it does not replace a record with a halving matching by one without.
    SubmitResult submit(const DrawingRecord& rec);
    SubmitResult submit(const PointSet& s, const std::string& provenance);
    SubmitResult submit(const Signature& d, const std::string& provenance);

    std::vector<DrawingRecord> records() const;
    std::vector<DrawingRecord> records(DrawingKind kind) const;
    std::optional<DrawingRecord> get(DrawingKind kind, std::uint32_t n) const;
    std::filesystem::path payload(const DrawingRecord& rec) const { return root_ / rec.payload_path; }

    /// Smallest bound among records with a halving matching, larger n on ties; nullopt if there is none.
    std::optional<DrawingRecord> best(DrawingKind kind) const;

    /// Recounts every payload and recomputes every bound.
    FsckReport fsck() const;

    /// Submits every record of another registry directory.
    ImportReport import(const std::filesystem::path& other);

    /// Signatures up to this size get a full realizability check on submission and fsck.
    std::uint32_t realizability_limit = 96;

private:
    void load();
    void save() const;
    SubmitResult submit_verified(DrawingRecord rec, const std::string& payload_text);

    std::filesystem::path root_;
    std::vector<DrawingRecord> records_;
    mutable std::mutex mutex_;
};

/// best(kind) as (n, bound); throws DomainError on an empty registry.
std::pair<std::uint32_t, BoundValue> best_bound(const Registry& reg, DrawingKind kind);

struct VerifyReport {
    DrawingKind kind = DrawingKind::rectilinear;
    std::uint32_t n = 0;
    CrossingCount crossings;
    std::optional<CrossingCount> brute_crossings;
    bool general_position = true;  // points
    std::optional<bool> realizable;  // signatures, when checked
    std::optional<BoundValue> bound;  // n >= 3
    bool has_halving_matching = false;
};

/// Parses a payload and re-derives every value; brute counting only up to brute_limit vertices.
VerifyReport verify_payload(const std::filesystem::path& path, std::optional<DrawingKind> kind = std::nullopt,
                            std::uint32_t brute_limit = 0, std::uint32_t realizability_limit = 96);

}  // namespace kncr
