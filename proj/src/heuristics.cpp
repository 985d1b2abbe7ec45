#include "kncr/heuristics.hpp"

#include "kncr/errors.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>

namespace kncr {

namespace {

class Stopper {
public:
    explicit Stopper(const SearchBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {
        if (!b.wall_time && !b.max_steps) throw DomainError("a search budget needs a time or step limit");
    }

    bool done(std::uint64_t steps, const CrossingCount& current) const {
        if (budget_.max_steps && steps >= *budget_.max_steps) return true;
        if (budget_.target && current <= *budget_.target) return true;
        if (budget_.wall_time) {
            const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
            if (el.count() >= *budget_.wall_time) return true;
        }
        return false;
    }

    /// Remaining wall time, if limited.
    std::optional<double> remaining() const {
        if (!budget_.wall_time) return std::nullopt;
        const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
        return std::max(0.0, *budget_.wall_time - el.count());
    }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
};

// Uniform in [0, bound) by rejection, so results do not depend on the standard library.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r < limit) return r % bound;
    }
}

Integer below(std::mt19937_64& rng, const Integer& bound) {
    if (bound.fits_ulong_p()) return to_integer(below(rng, bound.get_ui()));
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    std::vector<std::uint64_t> words((bits + 63) / 64);
    Integer r;
    do {
        for (auto& w : words) w = rng();
        if (bits % 64 != 0) words.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
        mpz_import(r.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
    } while (r >= bound);
    return r;
}

Integer floor_mul(const Rational& q, const Integer& v) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), Integer(q.get_num() * v).get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

Integer diagonal(const PointSet& s) {
    Integer x0 = s[0].x, x1 = s[0].x, y0 = s[0].y, y1 = s[0].y;
    for (const auto& p : s.points()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    Integer d = (x1 - x0) * (x1 - x0) + (y1 - y0) * (y1 - y0);
    mpz_sqrt(d.get_mpz_t(), d.get_mpz_t());
    return std::max(d, Integer(1));
}

PointSet scaled(const PointSet& s, unsigned shift) {
    std::vector<Point> pts(s.points().begin(), s.points().end());
    for (auto& p : pts) {
        p.x <<= shift;
        p.y <<= shift;
    }
    return PointSet(std::move(pts));
}

}  // namespace

SearchResult<PointSet> random_relocation(const PointSet& s, const SearchBudget& budget, NeighborhoodState nbhd,
                                         const ProgressFn& progress) {
    const Stopper stop(budget);
    if (nbhd.radius <= 0 || nbhd.shrink_factor <= 0 || nbhd.shrink_factor >= 1)
        throw DomainError("neighborhood needs radius > 0 and a shrink factor in (0, 1)");
    const std::size_t n = s.size();
    SearchResult<PointSet> res{s, count_crossings(s), 0};
    if (n < 4) return res;
    std::mt19937_64 rng(budget.rng_seed);
    const Rational initial = nbhd.radius;
    const std::uint64_t stall_limit = nbhd.stall_threshold ? nbhd.stall_threshold : 50 * n;
    std::uint64_t stall = 0;
    CandidateBatch batch;
    while (!stop.done(res.steps, res.crossings)) {
        ++res.steps;
        batch.anchor = below(rng, n);
        Integer half = floor_mul(nbhd.radius, diagonal(res.drawing));
        if (half < 4) {
            unsigned shift = 0;
            while ((half << shift) < 4) ++shift;
            res.drawing = scaled(res.drawing, shift);
            half = floor_mul(nbhd.radius, diagonal(res.drawing));
        }
        const Point& p = res.drawing[batch.anchor];
        const Integer width = 2 * half + 1;
        batch.candidates.clear();
        for (std::size_t j = 0; j < n; ++j) {
            Integer dx = below(rng, width) - half;
            Integer dy = below(rng, width) - half;
            batch.candidates.push_back({p.x + dx, p.y + dy});
        }
        const auto values = evaluate_candidates(res.drawing, batch);
        std::optional<std::size_t> pick;
        for (std::size_t j = 0; j < values.size(); ++j)
            if (values[j] && (!pick || *values[j] < *values[*pick])) pick = j;
        if (pick && *values[*pick] <= res.crossings) {
            stall = *values[*pick] < res.crossings ? 0 : stall + 1;
            res.crossings = *values[*pick];
            res.drawing = res.drawing.with_replaced(batch.anchor, batch.candidates[*pick]);
        } else {
            ++stall;
        }
        if (stall >= stall_limit) {
            stall = 0;
            nbhd.radius *= nbhd.shrink_factor;
            if (nbhd.radius < nbhd.min_radius) nbhd.radius = initial;
        }
        if (progress) progress(res.steps, res.crossings, res.crossings);
    }
    return res;
}

namespace {

// Vertex v moves through the arrangement of lines spanned by the other points. Its position
// is (X, Y) / 2^k; sign[l] is the side of line l it is on.
class CellWalker {
public:
    CellWalker(const PointSet& s, std::uint32_t v)
        : v_(v), n_(static_cast<std::uint32_t>(s.size())), sig_(signature_of(s)),
          line_of_(std::size_t{n_} * n_, kNone), X_(s[v].x), Y_(s[v].y) {
        for (std::uint32_t a = 0; a < n_; ++a) {
            if (a == v_) continue;
            for (std::uint32_t b = a + 1; b < n_; ++b) {
                if (b == v_) continue;
                line_of_[a * n_ + b] = static_cast<std::uint32_t>(lines_.size());
                const Point &p = s[a], &q = s[b];
                Line l{a, b, q.x - p.x, q.y - p.y, 0};
                l.k = l.ey * p.x - l.ex * p.y;
                lines_.push_back(std::move(l));
            }
        }
        sign_.resize(lines_.size());
        for (std::size_t l = 0; l < lines_.size(); ++l) {
            sign_[l] = static_cast<signed char>(side(lines_[l], X_, Y_, k_));
            if (sign_[l] == 0) throw GeneralPositionError(lines_[l].a, lines_[l].b, v_);
        }
    }

    /// First and second line hit by the ray along d, in units of the ray parameter times 2^k.
    struct Hit {
        std::size_t line = 0;
        Rational first, second;
        bool has_second = false;
    };

    std::optional<Hit> cast(const Integer& dx, const Integer& dy) const {
        std::optional<Hit> hit;
        bool tie = false;
        Integer F;
        for (std::size_t l = 0; l < lines_.size(); ++l) {
            const Line& ln = lines_[l];
            const Integer G = ln.ex * dy - ln.ey * dx;
            if (sgn(G) == 0 || sgn(G) == sign_[l]) continue;
            F = ln.ex * Y_ - ln.ey * X_ + (ln.k << k_);
            Rational u(-F, G);
            u.canonicalize();
            if (!hit) {
                hit = Hit{l, std::move(u), 0, false};
            } else if (u < hit->first) {
                hit->second = std::move(hit->first);
                hit->has_second = true;
                hit->first = std::move(u);
                hit->line = l;
                tie = false;
            } else if (u == hit->first) {
                tie = true;
            } else if (!hit->has_second || u < hit->second) {
                hit->second = std::move(u);
                hit->has_second = true;
            }
        }
        if (!hit || tie || (hit->has_second && hit->second == hit->first)) return std::nullopt;
        return hit;
    }

    /// Crossing change if v moved across line l.
    std::int64_t delta(std::size_t l) const {
        const std::uint32_t a = lines_[l].a, b = lines_[l].b;
        std::int64_t d = 0;
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (x == a || x == b || x == v_) continue;
            d += convex(a, b, x) ? -1 : 1;
        }
        return d;
    }

    /// Moves to the point halfway between the first two crossings (beyond a lone crossing),
    /// then to the coarsest dyadic point of the same cell.
    void step(const Integer& dx, const Integer& dy, const Hit& hit) {
        const Rational mid = hit.has_second ? Rational((hit.first + hit.second) / 2) : Rational(2 * hit.first);
        const Integer& P = mid.get_num();
        const Integer& Q = mid.get_den();
        const Integer Xe = X_ * Q + P * dx, Ye = Y_ * Q + P * dy;  // exact target over Q 2^k
        sign_[hit.line] = static_cast<signed char>(-sign_[hit.line]);
        for (unsigned k = k_ > 4 ? k_ - 4 : 0;; ++k) {
            // round(Xe 2^k / (Q 2^k_)), computed as floor((2 Xe 2^k + den) / (2 den))
            const Integer den = Q << k_;
            Integer xs, ys;
            const Integer twice_den = 2 * den;
            mpz_fdiv_q(xs.get_mpz_t(), Integer(((2 * Xe) << k) + den).get_mpz_t(), twice_den.get_mpz_t());
            mpz_fdiv_q(ys.get_mpz_t(), Integer(((2 * Ye) << k) + den).get_mpz_t(), twice_den.get_mpz_t());
            if (in_cell(xs, ys, k)) {
                X_ = std::move(xs);
                Y_ = std::move(ys);
                k_ = k;
                return;
            }
        }
    }

    const Integer& x() const { return X_; }
    const Integer& y() const { return Y_; }
    unsigned k() const { return k_; }

private:
    static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

    struct Line {
        std::uint32_t a, b;
        Integer ex, ey, k;  // orient(p_a, p_b, q) = ex qy - ey qx + k
    };

    static int side(const Line& l, const Integer& X, const Integer& Y, unsigned k) {
        return sgn(Integer(l.ex * Y - l.ey * X + (l.k << k)));
    }

    bool in_cell(const Integer& X, const Integer& Y, unsigned k) const {
        for (std::size_t l = 0; l < lines_.size(); ++l)
            if (side(lines_[l], X, Y, k) != sign_[l]) return false;
        return true;
    }

    // Orientation with v at its current position.
    int orient(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
        if (i == v_) return orient(j, k, i);
        if (j == v_) return orient(k, i, j);
        if (k != v_) return sig_.orient(i, j, k);
        return i < j ? sign_[line_of_[i * n_ + j]] : -sign_[line_of_[j * n_ + i]];
    }

    bool convex(std::uint32_t a, std::uint32_t b, std::uint32_t x) const {
        std::uint32_t q[4] = {a, b, x, v_};
        std::sort(q, q + 4);
        return orient(q[0], q[1], q[2]) * orient(q[0], q[1], q[3]) * orient(q[0], q[2], q[3]) *
                   orient(q[1], q[2], q[3]) >
               0;
    }

    std::uint32_t v_, n_;
    Signature sig_;
    std::vector<std::uint32_t> line_of_;
    std::vector<Line> lines_;
    std::vector<signed char> sign_;
    Integer X_, Y_;
    unsigned k_ = 0;
};

Integer random_coord(std::mt19937_64& rng) {
    return to_integer(below(rng, (std::uint64_t{1} << 31) + 1)) - (1 << 30);
}

}  // namespace

SearchResult<PointSet> cell_walk(const PointSet& s, std::uint32_t v, const SearchBudget& budget,
                                 const CellWalkOptions& opts, const ProgressFn& progress) {
    const Stopper stop(budget);
    if (v >= s.size()) throw DomainError("vertex index out of range");
    SearchResult<PointSet> res{s, count_crossings(s), 0};
    if (s.size() < 4) return res;
    CellWalker walker(s, v);
    std::mt19937_64 rng(budget.rng_seed);
    CrossingCount current = res.crossings;
    Integer bx = s[v].x, by = s[v].y;
    unsigned bk = 0;
    const unsigned tries = std::max(1u, opts.greedy_tries);
    unsigned misses = 0;
    while (!stop.done(res.steps, res.crossings)) {
        struct Choice {
            Integer dx, dy;
            CellWalker::Hit hit;
            std::int64_t delta;
        };
        std::optional<Choice> choice;
        for (unsigned t = 0; t < tries; ++t) {
            Integer dx = random_coord(rng), dy = random_coord(rng);
            if (dx == 0 && dy == 0) continue;
            auto hit = walker.cast(dx, dy);
            if (!hit) continue;
            const std::int64_t d = walker.delta(hit->line);
            if (!choice || d < choice->delta) choice = Choice{std::move(dx), std::move(dy), std::move(*hit), d};
        }
        if (!choice) {
            // Only hits on arrangement vertices or no line ahead; draw new directions.
            if (++misses > 10000) break;
            continue;
        }
        misses = 0;
        ++res.steps;
        walker.step(choice->dx, choice->dy, choice->hit);
        current += choice->delta;
        if (current < res.crossings) {
            res.crossings = current;
            bx = walker.x();
            by = walker.y();
            bk = walker.k();
        }
        if (progress) progress(res.steps, current, res.crossings);
    }
    if (bx != s[v].x || by != s[v].y || bk != 0) {
        PointSet moved = bk ? scaled(s, bk) : s;
        res.drawing = moved.with_replaced(v, {bx, by});
    }
    return res;
}

SearchResult<PointSet> cell_walk_search(const PointSet& s, const SearchBudget& budget, std::uint64_t walk_steps,
                                        const CellWalkOptions& opts, const ProgressFn& progress) {
    const Stopper stop(budget);
    SearchResult<PointSet> res{s, count_crossings(s), 0};
    const std::size_t n = s.size();
    if (n < 4) return res;
    if (walk_steps == 0) walk_steps = 4 * n;
    std::mt19937_64 rng(budget.rng_seed);
    while (!stop.done(res.steps, res.crossings)) {
        SearchBudget sub;
        sub.rng_seed = rng();
        sub.max_steps = walk_steps;
        if (budget.max_steps) sub.max_steps = std::min(walk_steps, *budget.max_steps - res.steps);
        sub.wall_time = stop.remaining();
        sub.target = budget.target;
        const auto v = static_cast<std::uint32_t>(below(rng, n));
        auto walk = cell_walk(res.drawing, v, sub, opts);
        res.steps += std::max<std::uint64_t>(walk.steps, 1);
        if (walk.crossings < res.crossings) {
            res.drawing = std::move(walk.drawing);
            res.crossings = walk.crossings;
        }
        if (progress) progress(res.steps, res.crossings, res.crossings);
    }
    return res;
}

SearchResult<Signature> sig_flip_search(const Signature& d, const SearchBudget& budget, const ProgressFn& progress) {
    const Stopper stop(budget);
    SearchResult<Signature> res{d, count_crossings_sig(d), 0};
    const std::uint32_t n = d.size();
    if (n < 4) return res;
    std::mt19937_64 rng(budget.rng_seed);
    while (!stop.done(res.steps, res.crossings)) {
        ++res.steps;
        std::uint32_t t[3];
        t[0] = static_cast<std::uint32_t>(below(rng, n));
        do t[1] = static_cast<std::uint32_t>(below(rng, n));
        while (t[1] == t[0]);
        do t[2] = static_cast<std::uint32_t>(below(rng, n));
        while (t[2] == t[0] || t[2] == t[1]);
        std::sort(t, t + 3);
        const TripleId id{t[0], t[1], t[2]};
        const std::int64_t delta = flip_crossing_delta(res.drawing, id);
        if (delta <= 0 && realizable_after_flip(res.drawing, id)) {
            res.drawing.toggle(id);
            res.crossings += delta;
        }
        if (progress) progress(res.steps, res.crossings, res.crossings);
    }
    return res;
}

namespace {

bool convex4(const Signature& d, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t e) {
    return !(d.bit(d.rank(a, b, c)) ^ d.bit(d.rank(a, b, e)) ^ d.bit(d.rank(a, c, e)) ^ d.bit(d.rank(b, c, e)));
}

struct Removal {
    std::vector<std::uint32_t> vertices;
    CrossingCount crossings;
};

// Best pair or triple to delete, by inclusion-exclusion over crossing 4-sets.
Removal best_removal(const Signature& d, unsigned size) {
    const std::uint32_t n = d.size();
    std::vector<std::uint64_t> inv(n, 0), pair(std::size_t{n} * n, 0), triple;
    if (size == 3) triple.assign(d.triple_count(), 0);
    std::uint64_t total = 0;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                for (std::uint32_t e = c + 1; e < n; ++e) {
                    if (!convex4(d, a, b, c, e)) continue;
                    ++total;
                    ++inv[a], ++inv[b], ++inv[c], ++inv[e];
                    ++pair[a * n + b], ++pair[a * n + c], ++pair[a * n + e];
                    ++pair[b * n + c], ++pair[b * n + e], ++pair[c * n + e];
                    if (size == 3) {
                        ++triple[d.rank(a, b, c)], ++triple[d.rank(a, b, e)];
                        ++triple[d.rank(a, c, e)], ++triple[d.rank(b, c, e)];
                    }
                }
    Removal best{{}, 0};
    std::uint64_t best_value = 0;
    bool found = false;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b) {
            const std::uint64_t ab = total - inv[a] - inv[b] + pair[a * n + b];
            if (size == 2) {
                if (!found || ab < best_value) {
                    found = true;
                    best_value = ab;
                    best.vertices = {a, b};
                }
                continue;
            }
            for (std::uint32_t c = b + 1; c < n; ++c) {
                const std::uint64_t v =
                    ab - inv[c] + pair[a * n + c] + pair[b * n + c] - triple[d.rank(a, b, c)];
                if (!found || v < best_value) {
                    found = true;
                    best_value = v;
                    best.vertices = {a, b, c};
                }
            }
        }
    best.crossings = to_integer(best_value);
    return best;
}

std::vector<CrossingCount> removal_values_of(const PointSet& s) { return removal_values(s); }
std::vector<CrossingCount> removal_values_of(const Signature& d) { return removal_values_sig(d); }

Signature signature_for(const Signature& d) { return d; }
Signature signature_for(const PointSet& s) { return signature_of(s); }

PointSet remove_from(const PointSet& s, const std::vector<std::uint32_t>& vs) {
    const std::vector<std::size_t> idx(vs.begin(), vs.end());
    return s.without(idx);
}
Signature remove_from(const Signature& d, const std::vector<std::uint32_t>& vs) { return delete_vertices(d, vs); }

template <class Drawing>
SearchResult<Drawing> shrink_impl(const Drawing& start, std::uint32_t target_n, unsigned tuple_size,
                                  const ShrinkSink<Drawing>& sink) {
    if (target_n < 3) throw DomainError("shrink target must be at least 3");
    if (tuple_size < 1 || tuple_size > 3) throw DomainError("tuple size must be 1, 2 or 3");
    if (start.size() <= target_n) throw DomainError("drawing is not larger than the shrink target");
    SearchResult<Drawing> res{start, 0, 0};
    while (res.drawing.size() > target_n) {
        const auto size = static_cast<unsigned>(std::min<std::size_t>(tuple_size, res.drawing.size() - target_n));
        Removal r;
        if (res.drawing.size() - size < 4) {
            // Fewer than four vertices remain: every removal leaves zero crossings.
            r.crossings = 0;
            for (std::uint32_t i = 0; i < size; ++i) r.vertices.push_back(i);
        } else if (size == 1) {
            const auto values = removal_values_of(res.drawing);
            const auto it = std::min_element(values.begin(), values.end());
            r = {{static_cast<std::uint32_t>(it - values.begin())}, *it};
        } else {
            r = best_removal(signature_for(res.drawing), size);
        }
        res.drawing = remove_from(res.drawing, r.vertices);
        res.crossings = r.crossings;
        ++res.steps;
        if (sink) sink(res.drawing, res.crossings);
    }
    return res;
}

}  // namespace

SearchResult<PointSet> shrink(const PointSet& s, std::uint32_t target_n, unsigned tuple_size,
                              const ShrinkSink<PointSet>& sink) {
    return shrink_impl(s, target_n, tuple_size, sink);
}

SearchResult<Signature> shrink(const Signature& d, std::uint32_t target_n, unsigned tuple_size,
                               const ShrinkSink<Signature>& sink) {
    return shrink_impl(d, target_n, tuple_size, sink);
}

}  // namespace kncr
