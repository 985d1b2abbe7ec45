#pragma once

#include "parallel.hpp"
#include "rotation.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace kncr::detail {

struct SweepTotals {
    /// Sum over centers of the triangles containing them: the non-convex 4-subsets.
    std::uint64_t inside = 0;
    /// Per vertex: non-convex 4-subsets containing it (as interior point or hull vertex).
    std::vector<std::uint64_t> nonconvex;
};

/// One rotation per center over all other vertices. make_view() yields a recenterable
/// side functor; one is created per worker.
template <class MakeView>
SweepTotals sweep_all(std::uint32_t n, MakeView make_view, bool per_vertex) {
    struct Worker {
        decltype(make_view()) view;
        Rotation rot;
        std::vector<std::uint32_t> others;
        std::vector<std::uint64_t> prefix;
        std::uint64_t inside = 0;
        std::vector<std::uint64_t> nonconvex;
    };
    auto workers = parallel_tasks(
        n,
        [&] {
            return Worker{make_view(), {}, {}, {}, 0,
                          std::vector<std::uint64_t>(per_vertex ? n : 0, 0)};
        },
        [&](Worker& w, std::size_t task) {
            const auto center = static_cast<std::uint32_t>(task);
            w.others.clear();
            for (std::uint32_t v = 0; v < n; ++v)
                if (v != center) w.others.push_back(v);
            w.view.recenter(center);
            build_rotation(center, w.others, w.view, w.rot);
            const std::uint64_t t = triangles_around(w.rot);
            w.inside += t;
            if (per_vertex) {
                w.nonconvex[center] += t;
                for_each_vertex_share(w.rot, w.prefix,
                                      [&](std::uint32_t v, std::uint64_t k) { w.nonconvex[v] += k; });
            }
        });
    SweepTotals out;
    out.nonconvex.assign(per_vertex ? n : 0, 0);
    for (auto& w : workers) {
        out.inside += w.inside;
        for (std::size_t v = 0; v < out.nonconvex.size(); ++v) out.nonconvex[v] += w.nonconvex[v];
    }
    return out;
}

}  // namespace kncr::detail
