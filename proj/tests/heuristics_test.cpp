#include "support.hpp"
#include "minima.hpp"

#include "kncr/errors.hpp"
#include "kncr/heuristics.hpp"

#include <doctest.h>

using namespace kncr;
using namespace testsupport;

namespace {

struct Trace {
    std::vector<CrossingCount> current, best;
    ProgressFn fn() {
        return [this](std::uint64_t, const CrossingCount& c, const CrossingCount& b) {
            current.push_back(c);
            best.push_back(b);
        };
    }
    void check_monotone(const CrossingCount& start) const {
        CrossingCount run = start;
        for (std::size_t i = 0; i < best.size(); ++i) {
            if (current[i] < run) run = current[i];
            CHECK(best[i] == run);
            if (i) CHECK(best[i] <= best[i - 1]);
        }
    }
};

SearchBudget steps(std::uint64_t k, std::uint64_t seed) {
    SearchBudget b;
    b.max_steps = k;
    b.rng_seed = seed;
    return b;
}

}  // namespace

TEST_CASE("brute-search fixtures for small minima") {
    // Re-derive the cached minima with the test-side search; it never sees library code.
    for (std::size_t n = 5; n <= 9; ++n) CHECK(oracle_search_minimum(n, 12, 6000, 100 + n) == kSmallMinima[n]);
}

TEST_CASE("random relocation reaches the small minima from convex position") {
    for (std::size_t n = 5; n <= 9; ++n) {
        SearchBudget b;
        b.wall_time = 60;
        b.rng_seed = 7;
        b.target = kSmallMinima[n];
        const auto r = random_relocation(convex_polygon(n), b);
        CHECK(r.crossings == kSmallMinima[n]);
        CHECK(brute_crossings(r.drawing) == r.crossings);
    }
}

TEST_CASE("random relocation is deterministic and monotone") {
    const PointSet start = convex_polygon(10);
    Trace a, b;
    const auto r1 = random_relocation(start, steps(300, 99), {}, a.fn());
    const auto r2 = random_relocation(start, steps(300, 99), {}, b.fn());
    CHECK(r1.drawing == r2.drawing);
    CHECK(a.best == b.best);
    CHECK(r1.steps == 300);
    a.check_monotone(binomial(10, 4));
    CHECK(r1.crossings == brute_crossings(r1.drawing));
    CHECK(r1.crossings == a.best.back());
    const auto r3 = random_relocation(start, steps(300, 100));
    CHECK(r3.crossings == brute_crossings(r3.drawing));
}

TEST_CASE("budget and target") {
    CHECK_THROWS_AS(random_relocation(convex_polygon(6), SearchBudget{}), DomainError);
    SearchBudget b = steps(100000, 3);
    b.target = binomial(6, 4);  // already met
    CHECK(random_relocation(convex_polygon(6), b).steps == 0);
}

TEST_CASE("cell walk keeps its count exact") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        const PointSet s = random_points(rng, 6 + trial % 5, 100);
        Trace t;
        const auto r = cell_walk(s, trial % s.size(), steps(40, trial), {}, t.fn());
        CHECK(r.crossings == brute_crossings(r.drawing));
        CHECK(r.crossings <= brute_crossings(s));
        t.check_monotone(brute_crossings(s));
        // The other points are only scaled, so their signature is unchanged.
        const std::uint32_t v = trial % s.size();
        CHECK(delete_vertex(signature_of(r.drawing), v) == delete_vertex(signature_of(s), v));
    }
}

TEST_CASE("cell walk search reaches small minima") {
    for (std::size_t n : {7u, 8u}) {
        SearchBudget b;
        b.wall_time = 60;
        b.rng_seed = 1;
        b.target = kSmallMinima[n];
        const auto r = cell_walk_search(convex_polygon(n), b);
        CHECK(r.crossings == kSmallMinima[n]);
        CHECK(brute_crossings(r.drawing) == r.crossings);
    }
    const auto a = cell_walk_search(convex_polygon(9), steps(20, 4));
    const auto c = cell_walk_search(convex_polygon(9), steps(20, 4));
    CHECK(a.drawing == c.drawing);
}

TEST_CASE("signature flips reach one crossing on five vertices") {
    SearchBudget b;
    b.wall_time = 10;
    b.rng_seed = 2;
    b.target = 1;
    Trace t;
    const auto r = sig_flip_search(convex_signature(5), b, t.fn());
    CHECK(r.crossings == 1);
    CHECK(is_realizable(r.drawing));
    CHECK(brute_crossings_sig(r.drawing) == 1);
    t.check_monotone(5);
}

TEST_CASE("signature flips are deterministic and stay realizable") {
    std::mt19937_64 rng(6);
    const Signature d = signature_of(random_points(rng, 11));
    Trace a, b;
    const auto r1 = sig_flip_search(d, steps(2000, 8), a.fn());
    const auto r2 = sig_flip_search(d, steps(2000, 8), b.fn());
    CHECK(r1.drawing == r2.drawing);
    CHECK(a.current == b.current);
    CHECK(is_realizable(r1.drawing));
    CHECK(r1.crossings == brute_crossings_sig(r1.drawing));
    a.check_monotone(brute_crossings_sig(d));
}

namespace {

// Lexicographically first k-subset whose removal leaves the fewest crossings.
std::vector<std::size_t> brute_best_removal(const PointSet& s, unsigned k) {
    const std::size_t n = s.size();
    std::vector<std::size_t> pick(k), best;
    Integer best_cr = -1;
    auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
        if (depth == k) {
            const Integer c = brute_crossings(s.without(pick));
            if (best_cr < 0 || c < best_cr) best_cr = c, best = pick;
            return;
        }
        for (std::size_t i = from; i < n; ++i) {
            pick[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

}  // namespace

TEST_CASE("shrink follows the brute-force greedy removal") {
    std::mt19937_64 rng(44);
    for (unsigned tuple = 1; tuple <= 3; ++tuple) {
        for (int trial = 0; trial < 6; ++trial) {
            const PointSet s = random_points(rng, 10 + trial % 3, 200);
            const std::uint32_t target = 5;
            PointSet expect = s;
            std::vector<Integer> expect_counts;
            while (expect.size() > target) {
                const unsigned k = std::min<std::size_t>(tuple, expect.size() - target);
                expect = expect.without(brute_best_removal(expect, k));
                expect_counts.push_back(brute_crossings(expect));
            }
            std::vector<Integer> seen;
            const auto r = shrink(s, target, tuple, [&](const PointSet& p, const CrossingCount& c) {
                CHECK(brute_crossings(p) == c);
                seen.push_back(c);
            });
            CHECK(r.drawing == expect);
            CHECK(seen == expect_counts);
            // The signature version removes the same vertices.
            const auto rs = shrink(signature_of(s), target, tuple);
            CHECK(rs.drawing == signature_of(expect));
        }
    }
}

TEST_CASE("shrinking convex position keeps convex position") {
    const auto r = shrink(convex_polygon(8), 5, 2);
    CHECK(r.crossings == 5);
    CHECK_THROWS_AS(shrink(convex_polygon(5), 6, 1), DomainError);
}
