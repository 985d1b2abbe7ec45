#include "support.hpp"

#include "kncr/errors.hpp"
#include "kncr/geometry.hpp"
#include "kncr/signature.hpp"

#include <doctest.h>

using namespace kncr;
using namespace testsupport;

TEST_CASE("triple ranks are lexicographic and orient applies permutation parity") {
    Signature d(7);
    std::uint64_t r = 0;
    for (std::uint32_t i = 0; i < 7; ++i)
        for (std::uint32_t j = i + 1; j < 7; ++j)
            for (std::uint32_t k = j + 1; k < 7; ++k) CHECK(d.rank(i, j, k) == r++);
    CHECK(r == d.triple_count());
    d.set({1, 3, 5}, false);
    CHECK(d.orient(1, 3, 5) == -1);
    CHECK(d.orient(3, 1, 5) == 1);
    CHECK(d.orient(5, 1, 3) == -1);
    CHECK(d.orient(5, 3, 1) == 1);
    CHECK_THROWS_AS(make_triple(7, 2, 2, 4), DomainError);
    CHECK_THROWS_AS(make_triple(7, 1, 3, 7), DomainError);
}

TEST_CASE("signature_of matches direct orientation tests") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const PointSet s = random_points(rng, 3 + trial % 12);
        CHECK(signature_of(s) == brute_signature(s));
    }
}

TEST_CASE("signature counts agree with point counts, and deletion commutes") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const PointSet s = random_points(rng, 4 + trial % 7);
        const Signature d = signature_of(s);
        CHECK(is_realizable(d));
        const Integer cr = brute_crossings(s);
        CHECK(count_crossings_sig(d) == cr);
        CHECK(count_crossings_sig_brute(d) == cr);
        CHECK(brute_crossings_sig(d) == cr);
        const auto v = static_cast<std::uint32_t>(trial % s.size());
        CHECK(delete_vertex(d, v) == signature_of(s.without(v)));
        const auto rem = removal_values_sig(d);
        for (std::uint32_t u = 0; u < s.size(); ++u) CHECK(rem[u] == brute_crossings(s.without(u)));
        const auto inv = crossings_involving_sig(d);
        for (std::uint32_t u = 0; u < s.size(); ++u) CHECK(inv[u] == cr - rem[u]);
    }
}

TEST_CASE("deleting several vertices equals deleting them one at a time") {
    std::mt19937_64 rng(4);
    const PointSet s = random_points(rng, 10);
    const Signature d = signature_of(s);
    const std::size_t idx[] = {1, 4, 8};
    CHECK(delete_vertices(d, {8, 1, 4}) == signature_of(s.without(idx)));
}

TEST_CASE("convex signature") {
    for (std::uint32_t n = 3; n <= 12; ++n) {
        const Signature d = convex_signature(n);
        CHECK(d == Signature(n, true));
        CHECK(is_realizable(d));
        CHECK(count_crossings_sig(d) == binomial(n, 4));
    }
}

TEST_CASE("alternating 4-signatures are not realizable") {
    Signature d(4);
    // Triples 012, 013, 023, 123 as + - + -.
    d.set({0, 1, 3}, false);
    d.set({1, 2, 3}, false);
    CHECK_FALSE(is_realizable(d));
    CHECK_FALSE(catalog::realizable4(0b1010));
    CHECK(catalog::realizable4(0b1111));
}

TEST_CASE("rotation order is the counterclockwise order from the lowest index") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const PointSet s = random_points(rng, 4 + trial % 8);
        const Signature d = signature_of(s);
        for (std::uint32_t v = 0; v < s.size(); ++v) {
            std::vector<std::pair<double, std::uint32_t>> by_angle;
            const std::uint32_t first = v == 0 ? 1 : 0;
            const double a0 = std::atan2(Integer(s[first].y - s[v].y).get_d(), Integer(s[first].x - s[v].x).get_d());
            for (std::uint32_t u = 0; u < s.size(); ++u) {
                if (u == v) continue;
                double a = std::atan2(Integer(s[u].y - s[v].y).get_d(), Integer(s[u].x - s[v].x).get_d()) - a0;
                while (a < 0) a += 2 * 3.14159265358979323846;
                by_angle.emplace_back(u == first ? 0.0 : a, u);
            }
            std::sort(by_angle.begin(), by_angle.end());
            std::vector<std::uint32_t> expect;
            for (const auto& [a, u] : by_angle) expect.push_back(u);
            CHECK(rotation_order(d, v) == expect);
        }
    }
}

TEST_CASE("flip bookkeeping matches recounts") {
    std::mt19937_64 rng(12);
    int realizable_flips = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const PointSet s = random_points(rng, 5 + trial % 4);
        const Signature d = signature_of(s);
        const auto n = static_cast<std::uint32_t>(s.size());
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        for (int f = 0; f < 10; ++f) {
            std::uint32_t v[3];
            do {
                v[0] = pick(rng), v[1] = pick(rng), v[2] = pick(rng);
            } while (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]);
            std::sort(v, v + 3);
            const TripleId t = make_triple(n, v[0], v[1], v[2]);
            const Signature g = flip(d, t);
            CHECK(g.sign(t) == -d.sign(t));
            const bool ok = is_realizable(g);
            CHECK(realizable_after_flip(d, t) == ok);
            if (ok) {
                ++realizable_flips;
                CHECK(Integer(static_cast<long>(flip_crossing_delta(d, t))) ==
                      brute_crossings_sig(g) - brute_crossings_sig(d));
            }
        }
    }
    CHECK(realizable_flips > 0);
}

TEST_CASE("realizable_containing checks exactly the 5-subsets with both vertices") {
    auto oracle = [](const Signature& d, std::uint32_t a, std::uint32_t b) {
        const std::uint32_t n = d.size();
        std::vector<std::uint32_t> others;
        for (std::uint32_t v = 0; v < n; ++v)
            if (v != a && v != b) others.push_back(v);
        for (std::size_t x = 0; x < others.size(); ++x)
            for (std::size_t y = x + 1; y < others.size(); ++y)
                for (std::size_t z = y + 1; z < others.size(); ++z) {
                    std::uint32_t v[5] = {a, b, others[x], others[y], others[z]};
                    std::sort(v, v + 5);
                    unsigned code = 0, t = 0;
                    for (int i = 0; i < 5; ++i)
                        for (int j = i + 1; j < 5; ++j)
                            for (int k = j + 1; k < 5; ++k, ++t)
                                if (d.orient(v[i], v[j], v[k]) > 0) code |= 1u << t;
                    if (!catalog::realizable5(code)) return false;
                }
        return true;
    };
    std::mt19937_64 rng(90);
    int mixed = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const PointSet s = random_points(rng, 7);
        const Signature g = flip(signature_of(s), {0, 2, 4});
        bool any_true = false, any_false = false;
        for (std::uint32_t a = 0; a < 7; ++a)
            for (std::uint32_t b = a + 1; b < 7; ++b) {
                const bool want = oracle(g, a, b);
                CHECK(realizable_containing(g, a, b) == want);
                (want ? any_true : any_false) = true;
            }
        mixed += any_true && any_false;
    }
    CHECK(mixed > 0);
}
