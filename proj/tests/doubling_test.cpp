#include "support.hpp"

#include "kncr/bounds.hpp"
#include "kncr/doubling.hpp"
#include "kncr/errors.hpp"
#include "kncr/halving.hpp"

#include <doctest.h>

using namespace kncr;
using namespace testsupport;

TEST_CASE("triangle doubles to 3 and then 153 crossings") {
    PointSet s({{0, 0}, {10, 0}, {0, 10}});
    const long expect[] = {3, 153};
    for (long e : expect) {
        const auto m = halving_matching(s);
        REQUIRE(m.has_value());
        auto [t, rep] = double_points(s, *m);
        CHECK(t.size() == 2 * s.size());
        CHECK(brute_crossings(t) == e);
        CHECK(rep.output_crossings == e);
        CHECK(rep.predicted_crossings == predicted_double(DrawingKind::rectilinear, s.size(), rep.input_crossings));
        CHECK(rep.scale_used > 0);
        s = std::move(t);
    }
}

TEST_CASE("doubled points sit in pairs around the scaled originals") {
    std::mt19937_64 rng(3);
    const PointSet s = random_points(rng, 7, 50);
    const auto m = halving_matching(s);
    auto [t, rep] = double_points(s, *m);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(t[2 * i].x + t[2 * i + 1].x == 2 * rep.scale_used * s[i].x);
        CHECK(t[2 * i].y + t[2 * i + 1].y == 2 * rep.scale_used * s[i].y);
    }
}

TEST_CASE("random point sets double to the predicted count") {
    std::mt19937_64 rng(7);
    int doubled = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const PointSet s = random_points(rng, 3 + trial % 6, 500);
        const auto m = halving_matching(s);
        if (!m) continue;
        auto [t, rep] = double_points(s, *m);
        CHECK(brute_crossings(t) == predicted_double(DrawingKind::rectilinear, s.size(), brute_crossings(s)));
        CHECK(rep.output_n == 2 * s.size());
        ++doubled;
    }
    CHECK(doubled >= 20);
}

TEST_CASE("invalid matchings are refused") {
    std::mt19937_64 rng(8);
    const PointSet s = random_points(rng, 5);
    HalvingMatching m = *halving_matching(s);
    m.assignments[2].direction = Direction{s[3].x - s[2].x, s[3].y - s[2].y};
    m.assignments[2].partner.reset();
    CHECK_THROWS_AS(double_points(s, m), DomainError);
    m.assignments.pop_back();
    CHECK_THROWS_AS(double_points(s, m), DomainError);
}

TEST_CASE("convex 3-signature doubles along the pseudolinear recurrence") {
    const Signature d = convex_signature(3);
    const auto m = halving_matching_sig(d);
    REQUIRE(m.has_value());
    auto [g, rep] = double_signature(d, *m);
    CHECK(g.size() == 6);
    CHECK(brute_crossings_sig(g) == 6);
    CHECK(rep.output_crossings == predicted_double(DrawingKind::pseudolinear, 3, 0));
    CHECK(is_realizable(g));
    CHECK(rep.realizability == RealizabilityCheck::full);
    // The 6-vertex result has only three halving pseudolines, so the chain stops here.
    CHECK_FALSE(halving_matching_sig(g).has_value());
}

TEST_CASE("signature doubling of point signatures") {
    std::mt19937_64 rng(15);
    int even = 0, odd_edges = 0, odd_slots = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + trial % 5;
        PointSet s = random_points(rng, n, 300);
        if (n == 6 || n == 8) {
            // Random even sets rarely have a matching; a doubled odd set always does.
            const PointSet half = random_points(rng, n / 2, 300);
            if (n == 6) s = double_points(half, *halving_matching(half)).first;
        }
        const Signature d = signature_of(s);
        const Integer cr = brute_crossings_sig(d);
        if (n % 2 == 0) {
            const auto m = halving_matching_sig(d);
            if (!m) continue;
            auto [g, rep] = double_signature(d, *m);
            CHECK(brute_crossings_sig(g) == predicted_double(DrawingKind::pseudolinear, n, cr));
            CHECK(is_realizable(g));
            ++even;
        } else {
            if (const auto m = halving_matching_sig(d, OddLineRule::edges)) {
                auto [g, rep] = double_signature(d, *m);
                CHECK(brute_crossings_sig(g) == predicted_double(DrawingKind::pseudolinear, n, cr));
                CHECK(rep.kind == DrawingKind::pseudolinear);
                CHECK(is_realizable(g));
                ++odd_edges;
            }
            const auto m = halving_matching_sig(d, OddLineRule::slots);
            REQUIRE(m.has_value());
            auto [g, rep] = double_signature(d, *m);
            CHECK(brute_crossings_sig(g) == predicted_double(DrawingKind::rectilinear, n, cr));
            CHECK(rep.kind == DrawingKind::rectilinear);
            CHECK(is_realizable(g));
            ++odd_slots;
        }
    }
    CHECK(even > 0);
    CHECK(odd_edges > 0);
    CHECK(odd_slots > 0);
}

TEST_CASE("geometric doubling and signature doubling agree in count") {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 10; ++trial) {
        const PointSet s = random_points(rng, 5 + 2 * (trial % 2));
        const HalvingMatching m = attach_slots(s, *halving_matching(s));
        auto [t, prep] = double_points(s, m);
        HalvingMatching slots_only = m;
        for (auto& l : slots_only.assignments) l.direction.reset();
        auto [g, srep] = double_signature(signature_of(s), slots_only);
        CHECK(count_crossings(t) == count_crossings_sig(g));
    }
}

TEST_CASE("convex 5-signature with slots reaches the rectilinear prediction") {
    const Signature d = convex_signature(5);
    const auto m = halving_matching_sig(d, OddLineRule::slots);
    REQUIRE(m.has_value());
    auto [g, rep] = double_signature(d, *m);
    CHECK(rep.output_crossings == 130);
    CHECK(brute_crossings_sig(g) == 130);
}
