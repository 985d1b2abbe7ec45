#include "kncr/doubling.hpp"

#include "kncr/bounds.hpp"
#include "kncr/errors.hpp"

#include <algorithm>

namespace kncr {

std::string_view check_name(RealizabilityCheck c) {
    switch (c) {
        case RealizabilityCheck::full: return "full";
        case RealizabilityCheck::pairs: return "pairs";
        case RealizabilityCheck::none: return "none";
    }
    return "none";
}

std::pair<PointSet, DoublingReport> double_points(const PointSet& s, const HalvingMatching& m,
                                                  const DoublingOptions& opts) {
    const std::size_t n = s.size();
    if (!verify_matching(s, m)) throw DomainError("not a halving matching of this point set");
    DoublingReport rep;
    rep.input_n = n;
    rep.output_n = 2 * n;
    rep.input_crossings = count_crossings(s);
    rep.predicted_crossings = predicted_double(DrawingKind::rectilinear, n, rep.input_crossings);

    Integer vmax = 1;
    for (const auto& line : m.assignments) {
        vmax = std::max(vmax, Integer(abs(line.direction->dx)));
        vmax = std::max(vmax, Integer(abs(line.direction->dy)));
    }
    // Past `safe` every orientation of the doubled set has its sign fixed by the leading
    // power of the scale: |cross| >= 1 for integer input, and the lower terms are bounded by
    // 16 M V and 8 V^2. The cheap first guess is kept because it gives much smaller coordinates.
    const Integer safe = 16 * max_abs_coordinate(s) * vmax + 8 * vmax * vmax + 1;
    Integer scale = 4 * to_integer(n) * vmax;
    for (unsigned attempt = 0; attempt <= opts.retry_limit; ++attempt, scale = std::max(Integer(2 * scale), safe)) {
        std::vector<Point> out;
        out.reserve(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            const Direction& v = *m.assignments[i].direction;
            const Integer x = scale * s[i].x, y = scale * s[i].y;
            out.push_back({x + v.dx, y + v.dy});
            out.push_back({x - v.dx, y - v.dy});
        }
        PointSet doubled(std::move(out));
        try {
            rep.output_crossings = count_crossings(doubled);
        } catch (const GeneralPositionError&) {
            continue;
        }
        if (rep.output_crossings != rep.predicted_crossings) continue;
        rep.scale_used = scale;
        rep.retries = attempt;
        return {std::move(doubled), rep};
    }
    throw VerificationError("doubling did not reach the predicted count within the retry limit");
}

std::pair<Signature, DoublingReport> double_signature(const Signature& d, const HalvingMatching& m,
                                                      const DoublingOptions& opts) {
    const std::uint32_t n = d.size();
    if (!verify_matching_sig(d, m)) throw DomainError("not a halving matching of this signature");
    const bool edges = std::all_of(m.assignments.begin(), m.assignments.end(),
                                   [](const HalvingLine& l) { return l.partner.has_value(); });
    const bool slots = std::all_of(m.assignments.begin(), m.assignments.end(),
                                   [](const HalvingLine& l) { return l.slot.has_value() && !l.partner; });
    if (!edges && !slots) throw DomainError("matching mixes two-vertex lines and rotation slots");

    // side[i][x]: +1 if x is left of i's directed line. A partner w sits on the line; its copies
    // are split by the direction of w's own line.
    std::vector<std::vector<signed char>> side(n, std::vector<signed char>(n, -1));
    std::vector<signed char> partner_side(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& line = m.assignments[i];
        for (std::uint32_t x : left_side_sig(d, line)) side[i][x] = 1;
        if (edges) {
            const std::uint32_t w = *line.partner;
            partner_side[i] = static_cast<signed char>(d.orient(i, w, *m.assignments[w].partner));
        }
    }
    auto left = [&](std::uint32_t i, std::uint32_t copy) -> int {
        const std::uint32_t x = copy >> 1;
        if (edges && x == *m.assignments[i].partner) return (copy & 1) ? -partner_side[i] : partner_side[i];
        return side[i][x];
    };

    const std::uint32_t n2 = 2 * n;
    Signature out(n2, true);
    std::uint64_t r = 0;
    for (std::uint32_t a = 0; a < n2; ++a)
        for (std::uint32_t b = a + 1; b < n2; ++b)
            for (std::uint32_t c = b + 1; c < n2; ++c, ++r) {
                int s;
                if ((a >> 1) == (b >> 1))
                    s = -left(a >> 1, c);
                else if ((b >> 1) == (c >> 1))
                    s = -left(b >> 1, a);
                else
                    s = d.orient(a >> 1, b >> 1, c >> 1);
                out.set_bit(r, s > 0);
            }

    DoublingReport rep;
    rep.kind = edges ? DrawingKind::pseudolinear : DrawingKind::rectilinear;
    rep.input_n = n;
    rep.output_n = n2;
    rep.input_crossings = count_crossings_sig(d);
    rep.predicted_crossings = predicted_double(rep.kind, n, rep.input_crossings);
    rep.scale_used = 0;
    if (n2 <= opts.full_check_limit) {
        rep.realizability = RealizabilityCheck::full;
        if (!is_realizable(out)) throw VerificationError("doubled signature is not realizable");
    } else if (n2 <= opts.pair_check_limit) {
        rep.realizability = RealizabilityCheck::pairs;
        for (std::uint32_t i = 0; i < n; ++i)
            if (!realizable_containing(out, 2 * i, 2 * i + 1))
                throw VerificationError("doubled signature is not realizable");
    } else {
        rep.realizability = RealizabilityCheck::none;
    }
    rep.output_crossings = count_crossings_sig(out);
    if (rep.output_crossings != rep.predicted_crossings)
        throw VerificationError("doubled signature has " + rep.output_crossings.get_str() + " crossings, expected " +
                                rep.predicted_crossings.get_str());
    return {std::move(out), rep};
}

}  // namespace kncr
