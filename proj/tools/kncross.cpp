#include "kncr/bounds.hpp"
#include "kncr/doubling.hpp"
#include "kncr/errors.hpp"
#include "kncr/halving.hpp"
#include "kncr/heuristics.hpp"
#include "kncr/io.hpp"
#include "kncr/pipeline.hpp"
#include "kncr/registry.hpp"
#include "kncr/svg.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <iostream>
#include <variant>

using namespace kncr;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kDomain = 1, kMismatch = 2, kIo = 3;

std::atomic<bool> g_cancel{false};

using Drawing = std::variant<PointSet, Signature>;

DrawingKind resolve_kind(const fs::path& file, const std::string& kind) {
    return kind.empty() ? detect_kind(file) : parse_kind(kind);
}

Drawing load_any(const fs::path& file, DrawingKind kind) {
    if (kind == DrawingKind::rectilinear) return load_points(file);
    return load_signature(file);
}

CrossingCount count_any(const Drawing& d) {
    if (const auto* s = std::get_if<PointSet>(&d)) return count_crossings(*s);
    const auto& sig = std::get<Signature>(d);
    if (!is_realizable(sig)) throw VerificationError("signature is not realizable");
    return count_crossings_sig(sig);
}

std::size_t size_of(const Drawing& d) {
    return std::visit([](const auto& x) -> std::size_t { return x.size(); }, d);
}

void save_any(const fs::path& out, const Drawing& d) {
    if (const auto* s = std::get_if<PointSet>(&d))
        save_points(out, *s);
    else
        save_signature(out, std::get<Signature>(d));
}

std::string approx(const Rational& q) {
    std::ostringstream o;
    o.precision(12);
    o << q.get_d();
    return o.str();
}

void print_bound(const BoundValue& b) {
    std::cout << "bound " << b.str() << " (~" << approx(b.value) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crossing numbers of complete graphs: exact counting, doubling and local search"};
    app.require_subcommand(1);

    std::string file, kind, out, rule = "edges", matching_out, heuristic = "relocate", config_path;
    bool brute = false, binary = false, progress = false;
    std::uint32_t to = 0, brute_limit = 12;
    unsigned tuple = 1;
    double seconds = 10;
    std::uint64_t seed = 0, steps = 0;
    std::string target, n_text, crossings_text, registry_path = "registry", provenance = "cli";
    std::optional<double> wall;

    auto* count = app.add_subcommand("count", "Count the crossings of a drawing");
    count->add_option("file", file, "Point set or signature")->required();
    count->add_option("--kind", kind, "rect | pseudo (default: detected)");
    count->add_flag("--brute", brute, "Also count by the definition (slow)");

    auto* bound = app.add_subcommand("bound", "Upper bound on the crossing constant from a drawing");
    bound->add_option("file", file, "Point set or signature");
    bound->add_option("--kind", kind, "rect | pseudo")->required();
    bound->add_option("--n", n_text, "Use this vertex count instead of a file");
    bound->add_option("--crossings", crossings_text, "Use this crossing count instead of a file");

    auto* sig = app.add_subcommand("signature", "Triple orientations of a point set");
    sig->add_option("--from-points", file, "Point set")->required();
    sig->add_option("-o,--output", out, "Output file (default: stdout)");
    sig->add_flag("--binary", binary, "Packed binary format");

    auto* dbl = app.add_subcommand("double", "Doubling step through a halving matching");
    dbl->add_option("file", file)->required();
    dbl->add_option("--kind", kind);
    dbl->add_option("--rule", rule, "Odd-size signatures: edges | slots")->check(CLI::IsMember({"edges", "slots"}));
    dbl->add_option("-o,--output", out, "Doubled drawing");
    dbl->add_option("--matching-out", matching_out, "Write the matching used");

    auto* shr = app.add_subcommand("shrink", "Greedy vertex removal down to a target size");
    shr->add_option("file", file)->required();
    shr->add_option("--kind", kind);
    shr->add_option("--to", to, "Target vertex count")->required();
    shr->add_option("--tuple", tuple, "Vertices removed per step")->check(CLI::Range(1, 3));
    shr->add_option("-o,--output", out, "Final drawing");

    auto* opt = app.add_subcommand("optimize", "Local search");
    opt->add_option("file", file)->required();
    opt->add_option("--kind", kind);
    opt->add_option("--heuristic", heuristic)->check(CLI::IsMember({"relocate", "cellwalk", "flip"}));
    opt->add_option("--time", seconds, "Seconds");
    opt->add_option("--steps", steps, "Step limit (0: none)");
    opt->add_option("--seed", seed);
    opt->add_option("--target", target, "Stop at this crossing count");
    opt->add_flag("--progress", progress, "Print \"step count best\" after every step");
    opt->add_option("-o,--output", out, "Result");

    auto* ver = app.add_subcommand("verify", "Re-derive every value of a payload");
    ver->add_option("file", file)->required();
    ver->add_option("--kind", kind);
    ver->add_option("--brute-limit", brute_limit, "Brute-force recount up to this size");

    auto* svg = app.add_subcommand("export-svg", "Render a drawing");
    svg->add_option("file", file)->required();
    svg->add_option("--kind", kind);
    svg->add_option("-o,--output", out)->required();

    auto* pipe = app.add_subcommand("pipeline", "Run the optimize / double / shrink loop");
    pipe->add_option("--config", config_path, "JSON configuration")->required();
    pipe->add_option("--time", wall, "Override the configured wall time");

    auto* reg = app.add_subcommand("registry", "Best-known drawings");
    reg->add_option("--registry", registry_path, "Registry directory");
    reg->require_subcommand(1);
    auto* fsck = reg->add_subcommand("fsck", "Recount every record");
    auto* best = reg->add_subcommand("best", "Best bound per kind");
    best->add_option("--kind", kind);
    std::string import_dir;
    auto* imp = reg->add_subcommand("import", "Merge another registry");
    imp->add_option("dir", import_dir)->required();
    auto* sub = reg->add_subcommand("submit", "Submit a payload");
    sub->add_option("file", file)->required();
    sub->add_option("--kind", kind);
    sub->add_option("--crossings", crossings_text, "Claimed crossing count")->required();
    sub->add_option("--provenance", provenance);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*count) {
            const DrawingKind k = resolve_kind(file, kind);
            const Drawing d = load_any(file, k);
            const CrossingCount cr = count_any(d);
            std::cout << "n " << size_of(d) << "\ncrossings " << cr << "\n";
            if (brute) {
                const CrossingCount b = std::holds_alternative<PointSet>(d)
                                            ? count_crossings_brute(std::get<PointSet>(d))
                                            : count_crossings_sig_brute(std::get<Signature>(d));
                std::cout << "brute " << b << "\n";
                if (b != cr) return kMismatch;
            }
        } else if (*bound) {
            const DrawingKind k = parse_kind(kind);
            std::uint64_t n;
            CrossingCount cr;
            if (!n_text.empty() || !crossings_text.empty()) {
                if (n_text.empty() || crossings_text.empty()) throw DomainError("--n and --crossings go together");
                n = parse_integer(n_text).get_ui();
                cr = parse_integer(crossings_text);
            } else {
                if (file.empty()) throw DomainError("need a file or --n/--crossings");
                const Drawing d = load_any(file, detect_kind(file));
                n = size_of(d);
                cr = count_any(d);
            }
            std::cout << "n " << n << "\ncrossings " << cr << "\n";
            print_bound(bound_for(k, n, cr));
        } else if (*sig) {
            const Signature d = signature_of(load_points(file));
            if (out.empty()) {
                binary ? write_signature_binary(std::cout, d) : write_signature_text(std::cout, d);
            } else {
                save_signature(out, d, binary);
            }
        } else if (*dbl) {
            const DrawingKind k = resolve_kind(file, kind);
            const Drawing d = load_any(file, k);
            std::optional<HalvingMatching> m;
            Drawing result;
            DoublingReport rep;
            if (k == DrawingKind::rectilinear) {
                m = halving_matching(std::get<PointSet>(d));
                if (!m) throw DomainError("no halving matching");
                auto [s2, r] = double_points(std::get<PointSet>(d), *m);
                result = std::move(s2);
                rep = r;
            } else {
                m = halving_matching_sig(std::get<Signature>(d), rule == "slots" ? OddLineRule::slots : OddLineRule::edges);
                if (!m) throw DomainError("no halving matching");
                auto [d2, r] = double_signature(std::get<Signature>(d), *m);
                result = std::move(d2);
                rep = r;
            }
            std::cout << "recurrence " << kind_name(rep.kind) << "\ninput_n " << rep.input_n << "\ninput_crossings "
                      << rep.input_crossings << "\noutput_n " << rep.output_n << "\noutput_crossings "
                      << rep.output_crossings << "\npredicted_crossings " << rep.predicted_crossings << "\nscale_used "
                      << rep.scale_used << "\nretries " << rep.retries << "\n";
            if (k == DrawingKind::pseudolinear) std::cout << "realizability_check " << check_name(rep.realizability) << "\n";
            if (!matching_out.empty()) write_file_atomic(matching_out, dump_matching(*m));
            if (!out.empty()) save_any(out, result);
        } else if (*shr) {
            const DrawingKind k = resolve_kind(file, kind);
            const Drawing d = load_any(file, k);
            auto print = [](const auto& x, const CrossingCount& cr) { std::cout << x.size() << ' ' << cr << "\n"; };
            Drawing result;
            if (k == DrawingKind::rectilinear)
                result = shrink(std::get<PointSet>(d), to, tuple, ShrinkSink<PointSet>(print)).drawing;
            else
                result = shrink(std::get<Signature>(d), to, tuple, ShrinkSink<Signature>(print)).drawing;
            if (!out.empty()) save_any(out, result);
        } else if (*opt) {
            const DrawingKind k = resolve_kind(file, kind);
            const Drawing d = load_any(file, k);
            SearchBudget b;
            b.wall_time = seconds;
            if (steps) b.max_steps = steps;
            b.rng_seed = seed;
            if (!target.empty()) b.target = parse_integer(target);
            CrossingCount last_best = -1;
            ProgressFn report = [&](std::uint64_t step, const CrossingCount& cur, const CrossingCount& best_cr) {
                if (progress || best_cr != last_best) std::cout << step << ' ' << cur << ' ' << best_cr << "\n";
                last_best = best_cr;
            };
            Drawing result;
            CrossingCount cr;
            if (heuristic == "flip") {
                if (k != DrawingKind::pseudolinear) throw DomainError("flip search needs a signature");
                auto r = sig_flip_search(std::get<Signature>(d), b, report);
                result = std::move(r.drawing);
                cr = r.crossings;
            } else {
                if (k != DrawingKind::rectilinear) throw DomainError(heuristic + " needs a point set");
                auto r = heuristic == "relocate" ? random_relocation(std::get<PointSet>(d), b, {}, report)
                                                 : cell_walk_search(std::get<PointSet>(d), b, 0, {}, report);
                result = std::move(r.drawing);
                cr = r.crossings;
            }
            std::cout << "crossings " << cr << "\n";
            if (!out.empty()) save_any(out, result);
        } else if (*ver) {
            const VerifyReport r = verify_payload(file, kind.empty() ? std::nullopt : std::optional(parse_kind(kind)), brute_limit);
            std::cout << "kind " << kind_name(r.kind) << "\nn " << r.n << "\n";
            if (r.kind == DrawingKind::rectilinear) {
                std::cout << "general_position " << (r.general_position ? "yes" : "no") << "\n";
                if (!r.general_position) return kMismatch;
            } else {
                std::cout << "realizable " << (r.realizable ? (*r.realizable ? "yes" : "no") : "unchecked") << "\n";
                if (r.realizable && !*r.realizable) return kMismatch;
            }
            std::cout << "crossings " << r.crossings << "\n";
            if (r.brute_crossings) std::cout << "brute " << *r.brute_crossings << "\n";
            std::cout << "halving_matching " << (r.has_halving_matching ? "yes" : "no") << "\n";
            if (r.bound) print_bound(*r.bound);
            if (r.brute_crossings && *r.brute_crossings != r.crossings) return kMismatch;
        } else if (*svg) {
            const DrawingKind k = resolve_kind(file, kind);
            const Drawing d = load_any(file, k);
            std::visit([&](const auto& x) { export_svg(x, out); }, d);
        } else if (*pipe) {
            PipelineConfig cfg = load_config(config_path);
            if (wall) cfg.wall_time = *wall;
            std::signal(SIGINT, [](int) { g_cancel = true; });
            std::signal(SIGTERM, [](int) { g_cancel = true; });
            const RunReport r = orchestrate(cfg, &g_cancel);
            std::cout << "rounds " << r.rounds << "\naccepted " << r.accepted << "\nrejected " << r.rejected
                      << "\ndoublings " << r.doublings << "\nmatching_failures " << r.matching_failures << "\n";
            for (const auto& [k, b] : r.final_best)
                std::cout << "best " << kind_name(k) << ' ' << (b ? b->str() : std::string("none")) << "\n";
        } else if (*reg) {
            Registry registry(registry_path);
            if (*fsck) {
                const FsckReport r = registry.fsck();
                std::cout << "checked " << r.checked << "\n";
                for (const auto& p : r.problems) std::cout << "problem " << p << "\n";
                if (!r.ok()) return kMismatch;
            } else if (*best) {
                std::vector<DrawingKind> kinds{DrawingKind::rectilinear, DrawingKind::pseudolinear};
                if (!kind.empty()) kinds = {parse_kind(kind)};
                for (DrawingKind k : kinds) {
                    if (kind.empty() && !registry.best(k)) {
                        std::cout << kind_name(k) << " none\n";
                        continue;
                    }
                    const auto [n, b] = best_bound(registry, k);
                    std::cout << kind_name(k) << " n " << n << ' ';
                    print_bound(b);
                }
            } else if (*imp) {
                const ImportReport r = registry.import(import_dir);
                std::cout << "accepted " << r.accepted << "\nrejected " << r.rejected << "\n";
                for (const auto& why : r.reasons) std::cout << "rejected " << why << "\n";
            } else if (*sub) {
                DrawingRecord rec;
                rec.kind = resolve_kind(file, kind);
                rec.payload_path = file;
                rec.crossings = parse_integer(crossings_text);
                rec.n = static_cast<std::uint32_t>(size_of(load_any(file, rec.kind)));
                rec.provenance = provenance;
                const SubmitResult r = registry.submit(rec);
                if (!r.accepted) {
                    std::cout << "rejected " << r.reason << "\n";
                    return r.reason == "count mismatch" ? kMismatch : kDomain;
                }
                std::cout << "accepted n " << r.record->n << " crossings " << r.record->crossings << "\n";
                print_bound(r.record->bound);
            }
        }
    } catch (const GeneralPositionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
