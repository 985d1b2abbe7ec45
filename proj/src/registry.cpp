#include "kncr/registry.hpp"

#include "kncr/errors.hpp"
#include "kncr/halving.hpp"
#include "kncr/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace kncr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

fs::path payload_name(DrawingKind kind, std::uint32_t n) {
    return fs::path(std::string(kind_name(kind))) /
           ("n" + std::to_string(n) + (kind == DrawingKind::rectilinear ? ".pts" : ".sig"));
}

json to_json(const DrawingRecord& r) {
    return {{"kind", kind_name(r.kind)},
            {"n", r.n},
            {"crossings", r.crossings.get_str()},
            {"bound", r.bound.str()},
            {"payload", r.payload_path.generic_string()},
            {"provenance", r.provenance},
            {"created_at", r.created_at},
            {"has_halving_matching", r.has_halving_matching}};
}

DrawingRecord from_json(const json& j) {
    DrawingRecord r;
    r.kind = parse_kind(j.at("kind").get<std::string>());
    r.n = j.at("n").get<std::uint32_t>();
    r.crossings = parse_integer(j.at("crossings").get<std::string>());
    r.bound = BoundValue::parse(r.kind, j.at("bound").get<std::string>());
    r.payload_path = j.at("payload").get<std::string>();
    r.provenance = j.value("provenance", "");
    r.created_at = j.value("created_at", "");
    r.has_halving_matching = j.value("has_halving_matching", false);
    return r;
}

std::vector<DrawingRecord> read_index(const fs::path& root) {
    const fs::path index = root / "index.json";
    std::vector<DrawingRecord> out;
    if (!fs::exists(index)) return out;
    std::ifstream in(index);
    if (!in) throw Error("cannot read " + index.string());
    json j;
    try {
        j = json::parse(in);
        for (const auto& r : j.at("records")) out.push_back(from_json(r));
    } catch (const json::exception& e) {
        throw ParseError(std::string("registry index: ") + e.what(), 0);
    }
    return out;
}

std::string serialize(const PointSet& s) {
    std::ostringstream out;
    write_points(out, s);
    return out.str();
}

std::string serialize(const Signature& d) {
    std::ostringstream out;
    write_signature_text(out, d);
    return out.str();
}

// Exact re-derivation shared by submission and fsck. Throws on unusable payloads.
struct Checked {
    std::uint32_t n = 0;
    CrossingCount crossings;
    bool matching = false;
    std::string text;
};

Checked check_points(const PointSet& s) {
    Checked c;
    c.n = static_cast<std::uint32_t>(s.size());
    if (c.n < 3) throw DomainError("fewer than 3 vertices");
    c.crossings = count_crossings(s);
    // Odd sets in general position always have one.
    c.matching = c.n % 2 == 1 || halving_matching(s).has_value();
    c.text = serialize(s);
    return c;
}

Checked check_signature(const Signature& d, std::uint32_t realizability_limit) {
    Checked c;
    c.n = d.size();
    if (c.n < 3) throw DomainError("fewer than 3 vertices");
    if (c.n <= realizability_limit && !is_realizable(d)) throw VerificationError("not realizable");
    c.crossings = count_crossings_sig(d);
    c.matching = halving_matching_sig(d).has_value();
    c.text = serialize(d);
    return c;
}

Checked check_payload(DrawingKind kind, const fs::path& path, std::uint32_t realizability_limit) {
    if (kind == DrawingKind::rectilinear) return check_points(load_points(path));
    return check_signature(load_signature(path), realizability_limit);
}

}  // namespace

Registry::Registry(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_ / "rect");
    fs::create_directories(root_ / "pseudo");
    load();
}

void Registry::load() { records_ = read_index(root_); }

void Registry::save() const {
    json arr = json::array();
    for (const auto& r : records_) arr.push_back(to_json(r));
    write_file_atomic(root_ / "index.json", json{{"records", arr}}.dump(2) + "\n");
}

SubmitResult Registry::submit(const DrawingRecord& rec) {
    Checked c;
    try {
        c = check_payload(rec.kind, rec.payload_path, realizability_limit);
    } catch (const GeneralPositionError& e) {
        return {false, std::string("not in general position: ") + e.what(), std::nullopt};
    } catch (const VerificationError& e) {
        return {false, e.what(), std::nullopt};
    } catch (const std::exception& e) {
        return {false, std::string("payload unreadable: ") + e.what(), std::nullopt};
    }
    if (c.n != rec.n || c.crossings != rec.crossings) return {false, "count mismatch", std::nullopt};
    DrawingRecord out = rec;
    out.has_halving_matching = c.matching;
    return submit_verified(std::move(out), c.text);
}

SubmitResult Registry::submit(const PointSet& s, const std::string& provenance) {
    Checked c;
    try {
        c = check_points(s);
    } catch (const GeneralPositionError& e) {
        return {false, std::string("not in general position: ") + e.what(), std::nullopt};
    }
    DrawingRecord r;
    r.kind = DrawingKind::rectilinear;
    r.n = c.n;
    r.crossings = c.crossings;
    r.provenance = provenance;
    r.has_halving_matching = c.matching;
    return submit_verified(std::move(r), c.text);
}

SubmitResult Registry::submit(const Signature& d, const std::string& provenance) {
    Checked c;
    try {
        c = check_signature(d, realizability_limit);
    } catch (const VerificationError& e) {
        return {false, e.what(), std::nullopt};
    }
    DrawingRecord r;
    r.kind = DrawingKind::pseudolinear;
    r.n = c.n;
    r.crossings = c.crossings;
    r.provenance = provenance;
    r.has_halving_matching = c.matching;
    return submit_verified(std::move(r), c.text);
}

SubmitResult Registry::submit_verified(DrawingRecord rec, const std::string& payload_text) {
    rec.bound = bound_for(rec.kind, rec.n, rec.crossings);
    rec.payload_path = payload_name(rec.kind, rec.n);
    rec.created_at = utc_now();
    std::lock_guard lock(mutex_);
    const auto it = std::find_if(records_.begin(), records_.end(),
                                 [&](const DrawingRecord& r) { return r.kind == rec.kind && r.n == rec.n; });
    if (it != records_.end()) {
        if (rec.crossings >= it->crossings) return {false, "not an improvement", std::nullopt};
        if (it->has_halving_matching && !rec.has_halving_matching)
            return {false, "would replace a drawing that has a halving matching", std::nullopt};
    }
    write_file_atomic(root_ / rec.payload_path, payload_text);
    if (it != records_.end())
        *it = rec;
    else
        records_.push_back(rec);
    std::sort(records_.begin(), records_.end(), [](const DrawingRecord& a, const DrawingRecord& b) {
        return std::pair(a.kind, a.n) < std::pair(b.kind, b.n);
    });
    save();
    return {true, "", rec};
}

std::vector<DrawingRecord> Registry::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

std::vector<DrawingRecord> Registry::records(DrawingKind kind) const {
    std::vector<DrawingRecord> out;
    for (auto& r : records())
        if (r.kind == kind) out.push_back(std::move(r));
    return out;
}

std::optional<DrawingRecord> Registry::get(DrawingKind kind, std::uint32_t n) const {
    for (auto& r : records(kind))
        if (r.n == n) return r;
    return std::nullopt;
}

std::optional<DrawingRecord> Registry::best(DrawingKind kind) const {
    std::optional<DrawingRecord> best;
    for (auto& r : records(kind)) {
        if (!r.has_halving_matching) continue;
        if (!best || r.bound.value < best->bound.value || (r.bound.value == best->bound.value && r.n > best->n))
            best = std::move(r);
    }
    return best;
}

FsckReport Registry::fsck() const {
    FsckReport rep;
    const auto recs = records();
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        const std::string tag = std::string(kind_name(r.kind)) + " n=" + std::to_string(r.n) + ": ";
        ++rep.checked;
        for (std::size_t j = 0; j < i; ++j)
            if (recs[j].kind == r.kind && recs[j].n == r.n) rep.problems.push_back(tag + "duplicate record");
        try {
            const Checked c = check_payload(r.kind, payload(r), realizability_limit);
            if (c.n != r.n) rep.problems.push_back(tag + "payload has " + std::to_string(c.n) + " vertices");
            if (c.crossings != r.crossings)
                rep.problems.push_back(tag + "stored crossings " + r.crossings.get_str() + ", recount " +
                                       c.crossings.get_str());
            if (!(bound_for(r.kind, c.n, c.crossings) == r.bound)) rep.problems.push_back(tag + "bound mismatch");
            if (c.matching != r.has_halving_matching) rep.problems.push_back(tag + "halving matching flag mismatch");
        } catch (const std::exception& e) {
            rep.problems.push_back(tag + e.what());
        }
    }
    return rep;
}

ImportReport Registry::import(const fs::path& other) {
    ImportReport rep;
    for (auto rec : read_index(other)) {
        rec.payload_path = other / rec.payload_path;
        rec.provenance += rec.provenance.empty() ? "import" : " (imported)";
        const auto res = submit(rec);
        if (res.accepted) {
            ++rep.accepted;
        } else {
            ++rep.rejected;
            rep.reasons.push_back(std::string(kind_name(rec.kind)) + " n=" + std::to_string(rec.n) + ": " + res.reason);
        }
    }
    return rep;
}

std::pair<std::uint32_t, BoundValue> best_bound(const Registry& reg, DrawingKind kind) {
    const auto best = reg.best(kind);
    if (!best) throw DomainError("no " + std::string(kind_name(kind)) + " record with a halving matching");
    return {best->n, best->bound};
}

VerifyReport verify_payload(const fs::path& path, std::optional<DrawingKind> kind, std::uint32_t brute_limit,
                            std::uint32_t realizability_limit) {
    VerifyReport rep;
    rep.kind = kind ? *kind : detect_kind(path);
    if (rep.kind == DrawingKind::rectilinear) {
        const PointSet s = load_points(path);
        rep.n = static_cast<std::uint32_t>(s.size());
        try {
            check_general_position(s);
        } catch (const GeneralPositionError&) {
            rep.general_position = false;
            return rep;
        }
        rep.crossings = count_crossings(s);
        if (rep.n <= brute_limit) rep.brute_crossings = count_crossings_brute(s);
        if (rep.n >= 3) rep.has_halving_matching = halving_matching(s).has_value();
    } else {
        const Signature d = load_signature(path);
        rep.n = d.size();
        if (rep.n <= realizability_limit) {
            rep.realizable = is_realizable(d);
            if (!*rep.realizable) return rep;
        }
        rep.crossings = count_crossings_sig(d);
        if (rep.n <= brute_limit) rep.brute_crossings = count_crossings_sig_brute(d);
        if (rep.n >= 3) rep.has_halving_matching = halving_matching_sig(d).has_value();
    }
    if (rep.n >= 3) rep.bound = bound_for(rep.kind, rep.n, rep.crossings);
    return rep;
}

}  // namespace kncr
