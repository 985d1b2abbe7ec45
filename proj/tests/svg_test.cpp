#include "support.hpp"

#include "kncr/svg.hpp"

#include <doctest.h>

#include <regex>

using namespace kncr;
using namespace testsupport;

namespace {

std::size_t occurrences(const std::string& text, const std::string& what) {
    std::size_t c = 0;
    for (auto p = text.find(what); p != std::string::npos; p = text.find(what, p + 1)) ++c;
    return c;
}

}  // namespace

TEST_CASE("point drawing has every vertex and segment") {
    std::mt19937_64 rng(1);
    const PointSet s = random_points(rng, 7, 1'000'000'000);
    const std::string svg = svg_of(s);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(occurrences(svg, "<circle") == 7);
    CHECK(occurrences(svg, "<line") == 21);
    CHECK(svg.find("K_7 with " + brute_crossings(s).get_str() + " crossings") != std::string::npos);
    // Every coordinate lands inside the 1000-unit viewport.
    const std::regex num(R"((cx|cy|x1|y1|x2|y2)="(-?[0-9.]+)\")");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), num); it != std::sregex_iterator(); ++it) {
        const double v = std::stod((*it)[2]);
        CHECK(v >= 0);
        CHECK(v <= 1000);
    }
}

TEST_CASE("wiring diagrams for signatures") {
    std::mt19937_64 rng(2);
    for (std::uint32_t n : {3u, 5u, 8u, 12u}) {
        const Signature d = signature_of(random_points(rng, n));
        const std::string svg = svg_of(d);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(svg.find("at infinity") != std::string::npos);
        CHECK(occurrences(svg, "<path") == n - 1);
    }
    CHECK(svg_of(convex_signature(6)).find("</svg>") != std::string::npos);
}
