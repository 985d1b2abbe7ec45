#include "kncr/halving.hpp"

#include "kncr/errors.hpp"
#include "plane.hpp"
#include "rotation.hpp"
#include "sig_view.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace kncr {

namespace {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

struct SignedItem {
    std::uint32_t x;
    bool positive;  // false: the ray opposite to x
};

std::vector<std::uint32_t> others_of(std::uint32_t n, std::uint32_t v) {
    std::vector<std::uint32_t> out;
    out.reserve(n - 1);
    for (std::uint32_t u = 0; u < n; ++u)
        if (u != v) out.push_back(u);
    return out;
}

// The 2m rays x and -x around the center, counterclockwise from the lowest other vertex.
template <class View>
std::vector<SignedItem> signed_circle(std::uint32_t center, std::span<const std::uint32_t> others,
                                      const View& view) {
    const std::uint32_t ref = others[0];
    std::vector<SignedItem> half{{ref, true}};
    for (std::size_t i = 1; i < others.size(); ++i) {
        const int s = view(ref, others[i]);
        if (s == 0) throw GeneralPositionError(center, ref, others[i]);
        half.push_back({others[i], s > 0});
    }
    std::stable_sort(half.begin() + 1, half.end(), [&](const SignedItem& a, const SignedItem& b) {
        const int s = view(a.x, b.x);
        if (s == 0) throw GeneralPositionError(center, a.x, b.x);
        return (a.positive == b.positive ? s : -s) > 0;
    });
    std::vector<SignedItem> circle = half;
    for (const auto& it : half) circle.push_back({it.x, !it.positive});
    return circle;
}

// Gap i sits between circle[i] and circle[i+1]; the rays circle[i+1..i+m] lie to its left.
std::vector<std::size_t> balanced_gaps(const std::vector<SignedItem>& circle) {
    const std::size_t m = circle.size() / 2;
    std::size_t left = 0;
    for (std::size_t i = 1; i <= m; ++i) left += circle[i].positive;
    std::vector<std::size_t> gaps;
    for (std::size_t i = 0; i < m; ++i) {
        if (2 * left == m) gaps.push_back(i);
        if (circle[i + 1].positive)
            --left;
        else
            ++left;
    }
    return gaps;
}

std::vector<char> left_of_gap(std::uint32_t n, const std::vector<SignedItem>& circle, std::size_t gap) {
    const std::size_t m = circle.size() / 2;
    std::vector<char> left(n, 0);
    for (std::size_t i = gap + 1; i <= gap + m; ++i)
        if (circle[i].positive) left[circle[i].x] = 1;
    return left;
}

RotationSlot slot_from_left(std::uint32_t v, const std::vector<std::uint32_t>& order, const std::vector<char>& left) {
    const std::size_t m = order.size();
    const std::size_t half = m / 2;
    std::size_t starts = 0, g = 0, count = 0;
    for (std::size_t j = 0; j < m; ++j) {
        count += left[order[j]] != 0;
        if (left[order[j]] && !left[order[(j + m - 1) % m]]) {
            ++starts;
            g = (j + m - 1) % m;
        }
    }
    if (starts != 1 || count != half) throw std::logic_error("left side is not an arc of the rotation");
    return {v, static_cast<std::uint32_t>(g), static_cast<std::uint32_t>((g + half) % m)};
}

// Pairs {a < b} whose line leaves `accept(left count)` vertices on the left of a -> b.
template <class View, class Accept>
std::vector<Edge> split_edges(std::uint32_t n, View view, Accept accept) {
    std::vector<Edge> edges;
    detail::Rotation rot;
    for (std::uint32_t a = 0; a < n; ++a) {
        const auto others = others_of(n, a);
        view.recenter(a);
        detail::build_rotation(a, others, view, rot);
        for (std::size_t i = 0; i < rot.order.size(); ++i)
            if (rot.order[i] > a && accept(rot.run[i])) edges.emplace_back(a, rot.order[i]);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Augmenting-path bipartite matching, vertices tried in index order and edges in
// lexicographic order. assign[v] is an edge index.
std::optional<std::vector<std::size_t>> perfect_edge_matching(std::uint32_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].first].push_back(e);
        adj[edges[e].second].push_back(e);
    }
    constexpr std::size_t kFree = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(edges.size(), kFree), assign(n, kFree);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t v) {
        for (std::size_t e : adj[v]) {
            if (seen[e]) continue;
            seen[e] = 1;
            if (owner[e] == kFree || augment(owner[e])) {
                owner[e] = v;
                assign[v] = e;
                return true;
            }
        }
        return false;
    };
    for (std::uint32_t v = 0; v < n; ++v) {
        seen.assign(edges.size(), 0);
        if (!augment(v)) return std::nullopt;
    }
    return assign;
}

std::uint32_t other_end(const Edge& e, std::uint32_t v) { return e.first == v ? e.second : e.first; }

std::uint32_t checked_n(std::size_t n) {
    if (n < 3) throw DomainError("halving lines need at least 3 vertices");
    if (n >= 65536) throw DomainError("too many vertices");
    return static_cast<std::uint32_t>(n);
}

Direction diff(const Point& to, const Point& from) { return {to.x - from.x, to.y - from.y}; }

int cross_sign(const Direction& d, const Point& from, const Point& to) {
    const Integer c = d.dx * (to.y - from.y) - d.dy * (to.x - from.x);
    return sgn(c);
}

bool angle_less(const Direction& a, const Direction& b) {
    auto half = [](const Direction& d) { return (d.dy > 0 || (d.dy == 0 && d.dx > 0)) ? 0 : 1; };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return a.dx * b.dy - a.dy * b.dx > 0;
}

template <class F>
decltype(auto) with_view(const PointSet& s, F&& f) {
    return detail::with_plane(s.points(), 0, detail::fits_small(s.points()), [&](auto& plane) {
        using Plane = std::decay_t<decltype(plane)>;
        typename Plane::View view(plane, 0);
        return f(view);
    });
}

template <class View>
std::vector<Direction> directions_at(const PointSet& s, std::uint32_t v, View& view) {
    const auto n = static_cast<std::uint32_t>(s.size());
    const auto others = others_of(n, v);
    view.recenter(v);
    const auto circle = signed_circle(v, others, view);
    const std::size_t m = others.size();
    std::vector<Direction> dirs;
    for (std::size_t g : balanced_gaps(circle)) {
        Direction d{0, 0};
        for (const auto& it : {circle[g], circle[(g + 1) % (2 * m)]}) {
            const Direction r = diff(s[it.x], s[v]);
            if (it.positive) {
                d.dx += r.dx;
                d.dy += r.dy;
            } else {
                d.dx -= r.dx;
                d.dy -= r.dy;
            }
        }
        dirs.push_back(std::move(d));
    }
    std::sort(dirs.begin(), dirs.end(), angle_less);
    return dirs;
}

std::size_t pick(const GapPolicy& policy, std::uint32_t v, std::size_t count) {
    if (count == 0) throw std::logic_error("no balancing gap at an odd-size vertex");
    const std::size_t idx = policy ? policy(v, count) : 0;
    if (idx >= count) throw DomainError("gap policy returned an out-of-range choice");
    return idx;
}

std::vector<RotationSlot> slots_at(const Signature& d, std::uint32_t v) {
    const auto others = others_of(d.size(), v);
    detail::SigView view{&d, v};
    const auto circle = signed_circle(v, others, view);
    detail::Rotation rot;
    detail::build_rotation(v, others, view, rot);
    std::vector<RotationSlot> slots;
    for (std::size_t g : balanced_gaps(circle)) slots.push_back(slot_from_left(v, rot.order, left_of_gap(d.size(), circle, g)));
    std::sort(slots.begin(), slots.end(),
              [](const RotationSlot& a, const RotationSlot& b) { return a.gap_position < b.gap_position; });
    return slots;
}

std::vector<Edge> sig_edges(const Signature& d) {
    const std::uint32_t n = d.size();
    return split_edges(n, detail::SigView{&d, 0}, [n](std::uint32_t left) {
        if (n % 2 == 0) return left == (n - 2) / 2;
        return left == (n - 1) / 2 || left == (n - 3) / 2;
    });
}

std::vector<Edge> point_edges(const PointSet& s, std::uint32_t n) {
    return with_view(s, [&](auto& view) {
        return split_edges(n, view, [n](std::uint32_t left) { return left == (n - 2) / 2; });
    });
}

bool partner_lines_distinct(const HalvingMatching& m) {
    std::set<Edge> used;
    for (const auto& line : m.assignments) {
        if (!line.partner) continue;
        const Edge e = std::minmax(line.anchor, *line.partner);
        if (!used.insert(e).second) return false;
    }
    return true;
}

}  // namespace

std::vector<HalvingLine> halving_lines(const PointSet& s) {
    const std::uint32_t n = checked_n(s.size());
    std::vector<HalvingLine> lines;
    if (n % 2 == 0) {
        for (const auto& [a, b] : point_edges(s, n)) lines.push_back({a, b, diff(s[b], s[a]), std::nullopt});
        return lines;
    }
    with_view(s, [&](auto& view) {
        for (std::uint32_t v = 0; v < n; ++v)
            for (auto& d : directions_at(s, v, view)) lines.push_back({v, std::nullopt, std::move(d), std::nullopt});
        return 0;
    });
    return lines;
}

std::vector<Direction> balancing_directions(const PointSet& s, std::uint32_t v) {
    const std::uint32_t n = checked_n(s.size());
    if (n % 2 == 0) throw DomainError("balancing directions through one vertex need odd n");
    if (v >= n) throw DomainError("vertex index out of range");
    return with_view(s, [&](auto& view) { return directions_at(s, v, view); });
}

Direction halving_direction(const PointSet& s, std::uint32_t v, const GapPolicy& policy) {
    auto dirs = balancing_directions(s, v);
    return std::move(dirs[pick(policy, v, dirs.size())]);
}

std::optional<HalvingMatching> halving_matching(const PointSet& s, const GapPolicy& policy) {
    const std::uint32_t n = checked_n(s.size());
    HalvingMatching m;
    if (n % 2 == 0) {
        const auto edges = point_edges(s, n);
        const auto assign = perfect_edge_matching(n, edges);
        if (!assign) return std::nullopt;
        for (std::uint32_t v = 0; v < n; ++v) {
            const std::uint32_t w = other_end(edges[(*assign)[v]], v);
            m.assignments.push_back({v, w, diff(s[w], s[v]), std::nullopt});
        }
        return m;
    }
    with_view(s, [&](auto& view) {
        for (std::uint32_t v = 0; v < n; ++v) {
            auto dirs = directions_at(s, v, view);
            m.assignments.push_back({v, std::nullopt, std::move(dirs[pick(policy, v, dirs.size())]), std::nullopt});
        }
        return 0;
    });
    return m;
}

std::vector<HalvingLine> halving_lines_sig(const Signature& d, OddLineRule rule) {
    const std::uint32_t n = checked_n(d.size());
    std::vector<HalvingLine> lines;
    if (n % 2 == 0 || rule == OddLineRule::edges) {
        for (const auto& [a, b] : sig_edges(d)) lines.push_back({a, b, std::nullopt, std::nullopt});
        return lines;
    }
    for (std::uint32_t v = 0; v < n; ++v)
        for (const auto& slot : slots_at(d, v)) lines.push_back({v, std::nullopt, std::nullopt, slot});
    return lines;
}

std::optional<HalvingMatching> halving_matching_sig(const Signature& d, OddLineRule rule, const GapPolicy& policy) {
    const std::uint32_t n = checked_n(d.size());
    HalvingMatching m;
    if (n % 2 == 0 || rule == OddLineRule::edges) {
        const auto edges = sig_edges(d);
        const auto assign = perfect_edge_matching(n, edges);
        if (!assign) return std::nullopt;
        for (std::uint32_t v = 0; v < n; ++v)
            m.assignments.push_back({v, other_end(edges[(*assign)[v]], v), std::nullopt, std::nullopt});
        return m;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto slots = slots_at(d, v);
        m.assignments.push_back({v, std::nullopt, std::nullopt, slots[pick(policy, v, slots.size())]});
    }
    return m;
}

bool verify_halving_line(const PointSet& s, const HalvingLine& line) {
    const std::size_t n = s.size();
    const std::uint32_t a = line.anchor;
    if (n < 3 || a >= n || (!line.direction && !line.partner)) return false;
    Direction dir;
    std::size_t through = 1;
    if (line.partner) {
        const std::uint32_t w = *line.partner;
        if (n % 2 != 0 || w >= n || w == a) return false;
        dir = diff(s[w], s[a]);
        if (line.direction && *line.direction != dir) return false;
        through = 2;
    } else {
        dir = *line.direction;
        if (n % 2 == 0 || (dir.dx == 0 && dir.dy == 0)) return false;
    }
    std::size_t left = 0, right = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
        if (x == a || (line.partner && x == *line.partner)) continue;
        const int o = cross_sign(dir, s[a], s[x]);
        if (o == 0) return false;
        (o > 0 ? left : right) += 1;
    }
    return left == right && left == (n - through) / 2;
}

bool verify_halving_line_sig(const Signature& d, const HalvingLine& line) {
    const std::uint32_t n = d.size();
    const std::uint32_t a = line.anchor;
    if (n < 3 || a >= n) return false;
    if (line.partner) {
        const std::uint32_t w = *line.partner;
        if (w >= n || w == a || line.slot) return false;
        std::uint32_t left = 0;
        for (std::uint32_t x = 0; x < n; ++x)
            if (x != a && x != w && d.orient(a, w, x) > 0) ++left;
        if (n % 2 == 0) return left == (n - 2) / 2;
        return left == (n - 1) / 2 || left == (n - 3) / 2;
    }
    if (!line.slot || n % 2 == 0) return false;
    const RotationSlot& slot = *line.slot;
    const std::uint32_t m = n - 1;
    if (slot.vertex != a || slot.gap_position >= m || slot.opposite_gap != (slot.gap_position + m / 2) % m) return false;
    // The rays x (x left) and -x (x right) must fit in an open half-turn starting at one of them.
    const auto order = rotation_order(d, a);
    std::vector<SignedItem> rays;
    for (std::uint32_t k = 0; k < m; ++k) rays.push_back({order[(slot.gap_position + 1 + k) % m], k < m / 2});
    for (const auto& first : rays) {
        bool all = true;
        for (const auto& other : rays) {
            if (other.x == first.x) continue;
            const int s = d.orient(a, first.x, other.x);
            if ((first.positive == other.positive ? s : -s) <= 0) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

bool verify_matching(const PointSet& s, const HalvingMatching& m) {
    if (m.size() != s.size()) return false;
    for (std::uint32_t v = 0; v < m.size(); ++v)
        if (m.assignments[v].anchor != v || !verify_halving_line(s, m.assignments[v])) return false;
    return partner_lines_distinct(m);
}

bool verify_matching_sig(const Signature& d, const HalvingMatching& m) {
    if (m.size() != d.size()) return false;
    for (std::uint32_t v = 0; v < m.size(); ++v)
        if (m.assignments[v].anchor != v || !verify_halving_line_sig(d, m.assignments[v])) return false;
    return partner_lines_distinct(m);
}

HalvingMatching attach_slots(const PointSet& s, HalvingMatching m) {
    const auto n = static_cast<std::uint32_t>(s.size());
    with_view(s, [&](auto& view) {
        detail::Rotation rot;
        for (auto& line : m.assignments) {
            if (line.partner || !line.direction) continue;
            const std::uint32_t v = line.anchor;
            std::vector<char> left(n, 0);
            for (std::uint32_t x = 0; x < n; ++x)
                if (x != v && cross_sign(*line.direction, s[v], s[x]) > 0) left[x] = 1;
            const auto others = others_of(n, v);
            view.recenter(v);
            detail::build_rotation(v, others, view, rot);
            line.slot = slot_from_left(v, rot.order, left);
        }
        return 0;
    });
    return m;
}

std::vector<std::uint32_t> left_side_sig(const Signature& d, const HalvingLine& line) {
    std::vector<std::uint32_t> left;
    const std::uint32_t a = line.anchor;
    if (line.partner) {
        for (std::uint32_t x = 0; x < d.size(); ++x)
            if (x != a && x != *line.partner && d.orient(a, *line.partner, x) > 0) left.push_back(x);
    } else if (line.slot) {
        const auto order = rotation_order(d, a);
        const std::size_t m = order.size();
        for (std::size_t k = 1; k <= m / 2; ++k) left.push_back(order[(line.slot->gap_position + k) % m]);
        std::sort(left.begin(), left.end());
    } else {
        throw DomainError("line has neither a partner nor a rotation slot");
    }
    return left;
}

std::string dump_matching(const HalvingMatching& m) {
    std::ostringstream out;
    for (const auto& line : m.assignments) {
        out << line.anchor << " : ";
        if (line.slot && !line.direction)
            out << "slot " << line.slot->gap_position << ' ' << line.slot->opposite_gap;
        else if (line.partner && !line.direction)
            out << *line.partner;
        else {
            if (line.partner)
                out << *line.partner;
            else
                out << '-';
            if (line.direction) out << ' ' << line.direction->dx << ' ' << line.direction->dy;
            if (line.direction && line.slot) out << " slot " << line.slot->gap_position << ' ' << line.slot->opposite_gap;
        }
        out << '\n';
    }
    return out.str();
}

HalvingMatching parse_matching(std::string_view text) {
    HalvingMatching m;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        try {
            if (tok.size() < 3 || tok[1] != ":") throw std::invalid_argument("expected 'v : ...'");
            HalvingLine line;
            line.anchor = static_cast<std::uint32_t>(std::stoul(tok[0]));
            if (tok[2] == "slot") {
                if (tok.size() != 5) throw std::invalid_argument("slot needs two gaps");
                line.slot = RotationSlot{line.anchor, static_cast<std::uint32_t>(std::stoul(tok[3])),
                                         static_cast<std::uint32_t>(std::stoul(tok[4]))};
            } else {
                if (tok[2] != "-") line.partner = static_cast<std::uint32_t>(std::stoul(tok[2]));
                if (tok.size() == 8 && tok[5] == "slot")
                    line.slot = RotationSlot{line.anchor, static_cast<std::uint32_t>(std::stoul(tok[6])),
                                             static_cast<std::uint32_t>(std::stoul(tok[7]))};
                if (tok.size() == 5 || line.slot)
                    line.direction = Direction{parse_integer(tok[3]), parse_integer(tok[4])};
                else if (tok.size() != 3 || !line.partner)
                    throw std::invalid_argument("expected a partner or a direction");
            }
            if (line.anchor != m.assignments.size()) throw std::invalid_argument("vertices must be listed in order");
            m.assignments.push_back(std::move(line));
        } catch (const std::logic_error& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return m;
}

}  // namespace kncr
