#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kncr {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact number of crossing edge pairs. Unbounded: doubling chains outgrow any fixed width.
using CrossingCount = Integer;

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

constexpr std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
constexpr std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3; }
constexpr std::uint64_t choose4(std::uint64_t n) {
    return n < 4 ? 0 : n * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
}

inline Integer to_integer(std::uint64_t v) {
    Integer r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return r;
}

/// Parses an optionally signed decimal integer; throws std::invalid_argument.
Integer parse_integer(std::string_view text);

inline std::string to_string(const Integer& v) { return v.get_str(); }

}  // namespace kncr
