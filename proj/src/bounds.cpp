#include "kncr/bounds.hpp"

#include "kncr/errors.hpp"

#include <stdexcept>

namespace kncr {

std::string_view kind_name(DrawingKind kind) {
    return kind == DrawingKind::rectilinear ? "rect" : "pseudo";
}

DrawingKind parse_kind(std::string_view name) {
    if (name == "rect" || name == "rectilinear") return DrawingKind::rectilinear;
    if (name == "pseudo" || name == "pseudolinear") return DrawingKind::pseudolinear;
    throw DomainError("unknown drawing kind '" + std::string(name) + "'");
}

std::string BoundValue::str() const { return value.get_num().get_str() + "/" + value.get_den().get_str(); }

BoundValue BoundValue::parse(DrawingKind kind, std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw std::invalid_argument("bound must be \"num/den\"");
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    BoundValue b{kind, Rational(num, den)};
    b.value.canonicalize();
    return b;
}

namespace {

Integer exact_div(const Integer& num, unsigned long den) {
    if (mpz_divisible_ui_p(num.get_mpz_t(), den) == 0)
        throw std::logic_error("non-integral crossing prediction");
    Integer q;
    mpz_divexact_ui(q.get_mpz_t(), num.get_mpz_t(), den);
    return q;
}

void require_n(std::uint64_t n) {
    if (n < 3) throw DomainError("bounds need n >= 3");
}

}  // namespace

BoundValue rect_bound(std::uint64_t n, const CrossingCount& cr) {
    require_n(n);
    const Integer N = to_integer(n);
    const Integer num = 168 * cr + 21 * N * N * N - 49 * N * N + 30 * N;
    const Integer den = 7 * N * N * N * N;
    BoundValue b{DrawingKind::rectilinear, Rational(num, den)};
    b.value.canonicalize();
    return b;
}

BoundValue pseudo_bound(std::uint64_t n, const CrossingCount& cr) {
    require_n(n);
    if (n % 2 == 0) return {DrawingKind::pseudolinear, rect_bound(n, cr).value};
    const Integer N = to_integer(n);
    const Integer num = 336 * cr + 42 * N * N * N - 98 * N * N + 81 * N;
    const Integer den = 14 * N * N * N * N;
    BoundValue b{DrawingKind::pseudolinear, Rational(num, den)};
    b.value.canonicalize();
    return b;
}

BoundValue bound_for(DrawingKind kind, std::uint64_t n, const CrossingCount& cr) {
    return kind == DrawingKind::rectilinear ? rect_bound(n, cr) : pseudo_bound(n, cr);
}

CrossingCount harary_hill(std::uint64_t n) {
    if (n < 1) throw DomainError("Harary-Hill number needs n >= 1");
    const Integer prod = to_integer(n / 2) * to_integer((n - 1) / 2) * to_integer(n >= 2 ? (n - 2) / 2 : 0) *
                         to_integer(n >= 3 ? (n - 3) / 2 : 0);
    return exact_div(prod, 4);
}

CrossingCount predicted_double(DrawingKind kind, std::uint64_t n, const CrossingCount& cr) {
    if (cr < 0) throw DomainError("negative crossing count");
    const Integer N = to_integer(n);
    if (kind == DrawingKind::rectilinear) return 16 * cr + exact_div(N * (2 * N * N - 7 * N + 5), 2);
    const Integer hi = to_integer((n + 1) / 2), lo = to_integer(n / 2);
    return 16 * cr + 2 * N * (hi * hi + lo * lo) - exact_div(7 * N * N - 5 * N, 2);
}

}  // namespace kncr
