#include "kncr/svg.hpp"

#include "kncr/errors.hpp"
#include "kncr/io.hpp"

#include <algorithm>
#include <sstream>

namespace kncr {

namespace {

constexpr long kView = 1000;
constexpr long kMargin = 40;

// Exact v (a rational) printed with three decimals, rounded toward minus infinity.
std::string decimal(const Rational& v) {
    Integer scaled = v.get_num() * 1000;
    mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), v.get_den().get_mpz_t());
    const bool neg = scaled < 0;
    Integer mag = neg ? Integer(-scaled) : scaled;
    std::string digits = mag.get_str();
    if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
    return (neg ? "-" : "") + digits.substr(0, digits.size() - 3) + "." + digits.substr(digits.size() - 3);
}

std::string header(long width, long height) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return o.str();
}

std::string caption(long y, std::size_t n, const CrossingCount& cr) {
    std::ostringstream o;
    o << "<text x=\"" << kMargin << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"20\">K_" << n
      << " with " << cr.get_str() << " crossings</text>\n";
    return o.str();
}

}  // namespace

std::string svg_of(const PointSet& s) {
    const std::size_t n = s.size();
    if (n == 0) throw DomainError("nothing to draw");
    Integer x0 = s[0].x, x1 = s[0].x, y0 = s[0].y, y1 = s[0].y;
    for (const auto& p : s.points()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    Integer span = std::max(Integer(x1 - x0), Integer(y1 - y0));
    if (span == 0) span = 1;
    const Rational scale(Integer(kView - 2 * kMargin), span);
    std::vector<std::pair<std::string, std::string>> at(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational x = Rational(s[i].x - x0) * scale + kMargin;
        const Rational y = Rational(kView - kMargin) - Rational(s[i].y - y0) * scale;  // y axis points up
        at[i] = {decimal(x), decimal(y)};
    }
    std::ostringstream o;
    o << header(kView, kView + 40);
    o << "<g stroke=\"black\" stroke-width=\"0.5\" stroke-opacity=\"0.6\">\n";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            o << "<line x1=\"" << at[i].first << "\" y1=\"" << at[i].second << "\" x2=\"" << at[j].first << "\" y2=\""
              << at[j].second << "\"/>\n";
    o << "</g>\n<g fill=\"crimson\">\n";
    for (std::size_t i = 0; i < n; ++i)
        o << "<circle cx=\"" << at[i].first << "\" cy=\"" << at[i].second << "\" r=\"4\"/>\n";
    o << "</g>\n" << caption(kView + 25, n, n >= 4 ? count_crossings(s) : CrossingCount(0)) << "</svg>\n";
    return o.str();
}

namespace {

// A vertex h with every other vertex on one side of some line h-j, together with that j.
std::pair<std::uint32_t, std::uint32_t> hull_edge(const Signature& d) {
    const std::uint32_t n = d.size();
    for (std::uint32_t h = 0; h < n; ++h)
        for (std::uint32_t j = 0; j < n; ++j) {
            if (j == h) continue;
            bool all = true;
            for (std::uint32_t x = 0; x < n && all; ++x)
                if (x != h && x != j && d.orient(h, j, x) < 0) all = false;
            if (all) return {h, j};
        }
    throw DomainError("signature has no hull edge");
}

// Order of the vertices other than h and c as seen from c, starting at the ray toward h;
// each vertex is listed once, by whichever of its two rays comes first in the half-turn.
std::vector<std::uint32_t> local_sequence(const Signature& d, std::uint32_t c, std::uint32_t h) {
    struct Ray {
        std::uint32_t x;
        bool positive;
    };
    std::vector<Ray> rays;
    for (std::uint32_t x = 0; x < d.size(); ++x) {
        if (x == c || x == h) continue;
        rays.push_back({x, d.orient(c, h, x) > 0});
    }
    std::stable_sort(rays.begin(), rays.end(), [&](const Ray& a, const Ray& b) {
        const int s = d.orient(c, a.x, b.x);
        return (a.positive == b.positive ? s : -s) > 0;
    });
    std::vector<std::uint32_t> out;
    for (const auto& r : rays) out.push_back(r.x);
    return out;
}

// Adjacent swaps realizing every wire's crossing order, or empty if they are inconsistent.
std::vector<std::size_t> sweep_swaps(std::vector<std::uint32_t> perm,
                                     const std::vector<std::vector<std::uint32_t>>& seq, std::uint32_t n) {
    std::vector<std::size_t> next(n, 0), swaps;
    const std::size_t m = perm.size();
    const std::size_t total = m * (m - 1) / 2;
    while (swaps.size() < total) {
        bool moved = false;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            const std::uint32_t a = perm[p], b = perm[p + 1];
            if (next[a] < seq[a].size() && seq[a][next[a]] == b && next[b] < seq[b].size() && seq[b][next[b]] == a) {
                std::swap(perm[p], perm[p + 1]);
                ++next[a];
                ++next[b];
                swaps.push_back(p);
                moved = true;
            }
        }
        if (!moved) return {};
    }
    return swaps;
}

}  // namespace

std::string svg_of(const Signature& d) {
    const std::uint32_t n = d.size();
    if (n < 3) throw DomainError("wiring diagrams need at least 3 vertices");
    const auto [h, j] = hull_edge(d);
    // Starting order: the rotation around h, beginning at its hull neighbour j.
    std::vector<std::uint32_t> perm{j};
    {
        std::vector<std::uint32_t> rest;
        for (std::uint32_t x = 0; x < n; ++x)
            if (x != h && x != j) rest.push_back(x);
        std::stable_sort(rest.begin(), rest.end(), [&](std::uint32_t a, std::uint32_t b) { return d.orient(h, a, b) > 0; });
        perm.insert(perm.end(), rest.begin(), rest.end());
    }
    std::vector<std::vector<std::uint32_t>> seq(n);
    for (std::uint32_t c : perm) seq[c] = local_sequence(d, c, h);
    auto swaps = sweep_swaps(perm, seq, n);
    if (swaps.empty() && perm.size() > 1) {
        for (auto& s : seq) std::reverse(s.begin(), s.end());
        swaps = sweep_swaps(perm, seq, n);
    }
    if (swaps.empty() && perm.size() > 1) throw DomainError("signature does not yield a wiring diagram");

    const long step = 24, gap = 30;
    const long width = 2 * kMargin + static_cast<long>(swaps.size() + 1) * step + 40;
    const long height = 2 * kMargin + static_cast<long>(perm.size()) * gap + 40;
    std::vector<std::string> path(n);
    auto y_of = [&](std::size_t level) { return kMargin + static_cast<long>(level) * gap; };
    for (std::size_t level = 0; level < perm.size(); ++level)
        path[perm[level]] = "M " + std::to_string(kMargin) + ' ' + std::to_string(y_of(level));
    long x = kMargin;
    for (std::size_t p : swaps) {
        x += step;
        for (std::size_t level = 0; level < perm.size(); ++level) {
            std::size_t to = level;
            if (level == p) to = p + 1;
            if (level == p + 1) to = p;
            path[perm[level]] += " L " + std::to_string(x) + ' ' + std::to_string(y_of(to));
        }
        std::swap(perm[p], perm[p + 1]);
    }
    x += step;
    std::ostringstream o;
    o << header(width, height);
    o << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
    for (std::size_t level = 0; level < perm.size(); ++level)
        o << "<path d=\"" << path[perm[level]] << " L " << x << ' ' << y_of(level) << "\"/>\n";
    o << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t level = 0; level < perm.size(); ++level)
        o << "<text x=\"" << x + 6 << "\" y=\"" << y_of(level) + 4 << "\">" << perm[level] << "</text>\n";
    o << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 16 << "\">vertex " << h << " at infinity</text>\n";
    o << "</g>\n" << caption(height - 10, n, n >= 4 ? count_crossings_sig(d) : CrossingCount(0)) << "</svg>\n";
    return o.str();
}

void export_svg(const PointSet& s, const std::filesystem::path& out) { write_file_atomic(out, svg_of(s)); }
void export_svg(const Signature& d, const std::filesystem::path& out) { write_file_atomic(out, svg_of(d)); }

}  // namespace kncr
