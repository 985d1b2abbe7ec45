#include "kncr/pipeline.hpp"

#include "kncr/doubling.hpp"
#include "kncr/errors.hpp"
#include "kncr/halving.hpp"
#include "kncr/heuristics.hpp"
#include "kncr/io.hpp"
#include "kncr/registry.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <variant>

namespace kncr {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig c;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
    try {
        if (j.contains("kinds")) {
            c.kinds.clear();
            for (const auto& k : j["kinds"]) c.kinds.push_back(parse_kind(k.get<std::string>()));
        }
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("top_k", c.top_k);
        get("relocate_seconds", c.relocate_seconds);
        get("relocate_steps", c.relocate_steps);
        get("cellwalk_seconds", c.cellwalk_seconds);
        get("cellwalk_steps", c.cellwalk_steps);
        get("flip_seconds", c.flip_seconds);
        get("flip_steps", c.flip_steps);
        get("limited_seconds", c.limited_seconds);
        get("stall_window", c.stall_window);
        get("shrink_target", c.shrink_target);
        get("shrink_tuple", c.shrink_tuple);
        get("max_n", c.max_n);
        get("realizability_limit", c.realizability_limit);
        get("worker_count", c.worker_count);
        get("seed", c.seed);
        get("wall_time", c.wall_time);
        if (j.contains("registry_path")) c.registry_path = j["registry_path"].get<std::string>();
        if (j.contains("run_log")) c.run_log = j["run_log"].get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
    if (c.top_k < 1) throw DomainError("top_k must be at least 1");
    if (c.relocate_seconds <= 0 || c.cellwalk_seconds <= 0 || c.flip_seconds <= 0 || c.limited_seconds <= 0 ||
        c.stall_window <= 0 || c.wall_time <= 0)
        throw DomainError("budgets must be positive");
    if (c.relocate_steps == 0 || c.cellwalk_steps == 0 || c.flip_steps == 0)
        throw DomainError("step budgets must be positive");
    if (c.shrink_tuple < 1 || c.shrink_tuple > 3) throw DomainError("shrink_tuple must be 1, 2 or 3");
    return c;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

using Drawing = std::variant<PointSet, Signature>;

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class RunLog {
public:
    explicit RunLog(const fs::path& path) : out_(path, std::ios::app), start_(std::chrono::steady_clock::now()) {
        if (!out_) throw Error("cannot open run log " + path.string());
    }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    void write(json j) {
        j["t"] = elapsed();
        std::lock_guard lock(mutex_);
        out_ << j.dump() << '\n';
        out_.flush();
    }

private:
    std::ofstream out_;
    std::chrono::steady_clock::time_point start_;
    std::mutex mutex_;
};

struct Task {
    std::string heuristic;  // relocate | cellwalk | flip
    Drawing drawing;
    CrossingCount crossings;
    std::string provenance;
    std::uint64_t seed = 0;
    double seconds = 0;
    std::uint64_t steps = 0;
};

struct Outcome {
    Drawing drawing;
    CrossingCount crossings;
};

Outcome run_task(const Task& t) {
    SearchBudget b;
    b.rng_seed = t.seed;
    b.wall_time = t.seconds;
    b.max_steps = t.steps;
    if (t.heuristic == "flip") {
        auto r = sig_flip_search(std::get<Signature>(t.drawing), b);
        return {std::move(r.drawing), r.crossings};
    }
    const auto& s = std::get<PointSet>(t.drawing);
    auto r = t.heuristic == "cellwalk" ? cell_walk_search(s, b) : random_relocation(s, b);
    return {std::move(r.drawing), r.crossings};
}

Drawing load(const Registry& reg, const DrawingRecord& rec) {
    if (rec.kind == DrawingKind::rectilinear) return load_points(reg.payload(rec));
    return load_signature(reg.payload(rec));
}

std::size_t size_of(const Drawing& d) {
    return std::visit([](const auto& x) -> std::size_t { return x.size(); }, d);
}

json report_json(const DoublingReport& r) {
    return {{"kind", kind_name(r.kind)},
            {"input_n", r.input_n},
            {"input_crossings", r.input_crossings.get_str()},
            {"output_n", r.output_n},
            {"output_crossings", r.output_crossings.get_str()},
            {"predicted_crossings", r.predicted_crossings.get_str()},
            {"scale_used", r.scale_used.get_str()},
            {"retries", r.retries},
            {"realizability", check_name(r.realizability)}};
}

class Pipeline {
public:
    Pipeline(const PipelineConfig& cfg, const std::atomic<bool>* cancel)
        : cfg_(cfg), cancel_(cancel), reg_(cfg.registry_path),
          log_(cfg.run_log.empty() ? cfg.registry_path / "run.jsonl" : cfg.run_log) {
        reg_.realizability_limit = cfg.realizability_limit;
        workers_ = cfg.worker_count ? cfg.worker_count : std::max(1u, std::thread::hardware_concurrency());
    }

    RunReport run() {
        log_.write({{"event", "start"}, {"seed", cfg_.seed}, {"workers", workers_}});
        seed_registry();
        for (DrawingKind k : cfg_.kinds) {
            best_[k] = current_best(k);
            last_improvement_[k] = log_.elapsed();
            log_best(k);
        }
        while (!stopping()) {
            ++report_.rounds;
            std::vector<Task> tasks;
            std::map<DrawingKind, bool> idle;
            for (DrawingKind k : cfg_.kinds) {
                const std::size_t before = tasks.size();
                add_tasks(k, tasks);
                idle[k] = tasks.size() == before;
            }
            run_and_submit(tasks, "round " + std::to_string(report_.rounds));
            for (DrawingKind k : cfg_.kinds) {
                refresh_best(k);
                if (stopping()) break;
                if (idle[k] || log_.elapsed() - last_improvement_[k] >= cfg_.stall_window) {
                    double_best(k);
                    last_improvement_[k] = log_.elapsed();
                    refresh_best(k);
                }
            }
        }
        for (DrawingKind k : cfg_.kinds) {
            const auto b = current_best(k);
            report_.final_best.emplace_back(k, b ? std::optional(b->bound) : std::nullopt);
        }
        log_.write({{"event", "stop"},
                    {"rounds", report_.rounds},
                    {"accepted", report_.accepted},
                    {"rejected", report_.rejected},
                    {"doublings", report_.doublings}});
        return report_;
    }

private:
    bool stopping() const {
        return (cancel_ && cancel_->load()) || log_.elapsed() >= cfg_.wall_time;
    }

    double remaining() const { return std::max(0.01, cfg_.wall_time - log_.elapsed()); }

    std::uint64_t next_seed() { return mix(cfg_.seed ^ mix(++seed_counter_)); }

    void seed_registry() {
        for (DrawingKind k : cfg_.kinds) {
            if (!reg_.records(k).empty()) continue;
            const SubmitResult r = k == DrawingKind::rectilinear
                                       ? reg_.submit(PointSet({{0, 0}, {4, 0}, {0, 4}}), "seed triangle")
                                       : reg_.submit(convex_signature(3), "seed convex_signature(3)");
            note_submit(r, k, "seed");
        }
    }

    std::optional<DrawingRecord> current_best(DrawingKind k) const { return reg_.best(k); }

    void log_best(DrawingKind k) {
        const auto& b = best_[k];
        json j{{"event", "best"}, {"kind", kind_name(k)}};
        if (b) {
            j["n"] = b->n;
            j["bound"] = b->bound.str();
            j["crossings"] = b->crossings.get_str();
        }
        log_.write(j);
    }

    // Logs the registry's current best after every round, so the log shows its whole history.
    void refresh_best(DrawingKind k) {
        const auto b = current_best(k);
        if (b && (!best_[k] || b->bound.value < best_[k]->bound.value)) last_improvement_[k] = log_.elapsed();
        best_[k] = b;
        log_best(k);
    }

    void note_submit(const SubmitResult& r, DrawingKind k, const std::string& provenance) {
        if (r.accepted) {
            ++report_.accepted;
            log_.write({{"event", "submit"},
                        {"kind", kind_name(k)},
                        {"n", r.record->n},
                        {"crossings", r.record->crossings.get_str()},
                        {"bound", r.record->bound.str()},
                        {"has_halving_matching", r.record->has_halving_matching},
                        {"provenance", provenance}});
        } else {
            ++report_.rejected;
        }
    }

    void submit(const Drawing& d, DrawingKind k, const std::string& provenance) {
        if (size_of(d) < 3) return;
        const SubmitResult r = std::holds_alternative<PointSet>(d) ? reg_.submit(std::get<PointSet>(d), provenance)
                                                                   : reg_.submit(std::get<Signature>(d), provenance);
        note_submit(r, k, provenance);
    }

    void add_tasks(DrawingKind k, std::vector<Task>& tasks) {
        auto recs = reg_.records(k);
        std::erase_if(recs, [](const DrawingRecord& r) { return r.n < 4 || r.crossings == 0; });
        std::stable_sort(recs.begin(), recs.end(),
                         [](const DrawingRecord& a, const DrawingRecord& b) { return a.bound.value < b.bound.value; });
        if (recs.size() > cfg_.top_k) recs.resize(cfg_.top_k);
        for (const auto& rec : recs) {
            const Drawing d = load(reg_, rec);
            auto add = [&](const char* h, double seconds, std::uint64_t steps) {
                const std::uint64_t seed = next_seed();
                tasks.push_back({h, d, rec.crossings,
                                 std::string(h) + "(n=" + std::to_string(rec.n) + ") seed=" + std::to_string(seed), seed,
                                 std::min(seconds, remaining()), steps});
            };
            if (k == DrawingKind::rectilinear) {
                add("relocate", cfg_.relocate_seconds, cfg_.relocate_steps);
                add("cellwalk", cfg_.cellwalk_seconds, cfg_.cellwalk_steps);
            } else {
                add("flip", cfg_.flip_seconds, cfg_.flip_steps);
            }
        }
    }

    // Runs tasks on the worker pool, then submits improvements in task order.
    void run_and_submit(const std::vector<Task>& tasks, const std::string& context) {
        if (tasks.empty()) return;
        std::vector<std::optional<Outcome>> out(tasks.size());
        detail::parallel_tasks(
            tasks.size(), workers_, [] { return 0; }, [&](int&, std::size_t i) { out[i] = run_task(tasks[i]); });
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (!out[i] || out[i]->crossings >= tasks[i].crossings) continue;
            const DrawingKind k =
                std::holds_alternative<PointSet>(tasks[i].drawing) ? DrawingKind::rectilinear : DrawingKind::pseudolinear;
            submit(out[i]->drawing, k, tasks[i].provenance + " [" + context + "]");
        }
    }

    void double_best(DrawingKind k) {
        auto recs = reg_.records(k);
        // Doubling is deterministic, so a drawing already doubled in this run would only repeat itself.
        std::erase_if(recs, [&](const DrawingRecord& r) {
            return !r.has_halving_matching || 2 * r.n > cfg_.max_n || doubled_.count({k, r.n, r.crossings.get_str()});
        });
        std::stable_sort(recs.begin(), recs.end(), [](const DrawingRecord& a, const DrawingRecord& b) {
            if (a.bound.value != b.bound.value) return a.bound.value < b.bound.value;
            return a.n > b.n;
        });
        for (const auto& rec : recs) {
            if (stopping()) return;
            doubled_.insert({k, rec.n, rec.crossings.get_str()});
            const Drawing d = load(reg_, rec);
            std::optional<Drawing> doubled;
            DoublingReport rep;
            try {
                if (k == DrawingKind::rectilinear) {
                    const auto& s = std::get<PointSet>(d);
                    const auto m = halving_matching(s);
                    if (!m) {
                        no_matching(k, rec.n);
                        continue;
                    }
                    auto [s2, r] = double_points(s, *m);
                    doubled = std::move(s2);
                    rep = r;
                } else {
                    const auto& sig = std::get<Signature>(d);
                    const auto m = halving_matching_sig(sig);
                    if (!m) {
                        no_matching(k, rec.n);
                        continue;
                    }
                    auto [d2, r] = double_signature(sig, *m);
                    doubled = std::move(d2);
                    rep = r;
                }
            } catch (const Error& e) {
                log_.write({{"event", "double_failed"}, {"kind", kind_name(k)}, {"n", rec.n}, {"error", e.what()}});
                continue;
            }
            ++report_.doublings;
            json ev{{"event", "double"}, {"report", report_json(rep)}};
            log_.write(ev);
            const std::string prov = "double(n=" + std::to_string(rec.n) + ")";
            submit(*doubled, k, prov);

            std::vector<Drawing> family{*doubled};
            const std::uint32_t target = std::max<std::uint32_t>(cfg_.shrink_target ? cfg_.shrink_target : rec.n + 1, 3);
            if (target < 2 * rec.n) {
                const std::string sprov = prov + "->shrink(tuple=" + std::to_string(cfg_.shrink_tuple) + ")";
                auto keep = [&](const auto& x, const CrossingCount&) {
                    family.emplace_back(x);
                    submit(family.back(), k, sprov);
                };
                if (k == DrawingKind::rectilinear)
                    shrink(std::get<PointSet>(*doubled), target, cfg_.shrink_tuple, ShrinkSink<PointSet>(keep));
                else
                    shrink(std::get<Signature>(*doubled), target, cfg_.shrink_tuple, ShrinkSink<Signature>(keep));
            }

            std::vector<Task> tasks;
            for (const auto& x : family) {
                if (size_of(x) < 4) continue;
                const CrossingCount cr = std::holds_alternative<PointSet>(x) ? count_crossings(std::get<PointSet>(x))
                                                                             : count_crossings_sig(std::get<Signature>(x));
                if (cr == 0) continue;
                const std::uint64_t seed = next_seed();
                const char* h = k == DrawingKind::rectilinear ? "relocate" : "flip";
                tasks.push_back({h, x, cr,
                                 prov + "->" + h + "(n=" + std::to_string(size_of(x)) + ") seed=" + std::to_string(seed),
                                 seed, std::min(cfg_.limited_seconds, remaining()),
                                 k == DrawingKind::rectilinear ? cfg_.relocate_steps : cfg_.flip_steps});
            }
            run_and_submit(tasks, "limited");
            return;
        }
    }

    void no_matching(DrawingKind k, std::uint32_t n) {
        ++report_.matching_failures;
        log_.write({{"event", "no_matching"}, {"kind", kind_name(k)}, {"n", n}});
    }

    const PipelineConfig& cfg_;
    const std::atomic<bool>* cancel_;
    Registry reg_;
    RunLog log_;
    unsigned workers_ = 1;
    std::uint64_t seed_counter_ = 0;
    RunReport report_;
    std::map<DrawingKind, std::optional<DrawingRecord>> best_;
    std::map<DrawingKind, double> last_improvement_;
    std::set<std::tuple<DrawingKind, std::uint32_t, std::string>> doubled_;
};

}  // namespace

RunReport orchestrate(const PipelineConfig& cfg, const std::atomic<bool>* cancel) {
    Pipeline p(cfg, cancel);
    return p.run();
}

}  // namespace kncr
