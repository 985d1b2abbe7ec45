#include "kncr/signature.hpp"

#include <array>
#include <cstdint>

namespace kncr::catalog {

namespace {

// Bit c set iff the 5-vertex signature with lexicographic sign code c (bit t = triple t of
// 012,013,014,023,024,034,123,124,134,234; 1 = '+') is realizable by points. 264 entries;
// regenerated from small-grid enumeration and cross-checked against the chirotope axioms
// in tests/catalog_test.cpp.
constexpr std::array<std::uint64_t, 16> kRealizable5 = {
    0xd1110003c05088dbULL, 0x80b10001a030bd11ULL, 0x50300022447e0c0aULL, 0xc0a000a3e7220503ULL,
    0x010500e7c54480c0ULL, 0x0000000000000000ULL, 0x11bd00a0050c8d88ULL, 0xdb880080030a018bULL,
    0xd18050c0010011dbULL, 0x11b130a00500bd88ULL, 0x0000000000000000ULL, 0x030122a3e700a080ULL,
    0xc0a044e7c5000503ULL, 0x50307e2244000c0aULL, 0x88bd0c0580008d01ULL, 0xdb110a03c000888bULL,
};

// All 4-vertex codes except the two alternating ones (+-+- and -+-+).
constexpr std::uint32_t kRealizable4 = 0xffffu & ~((1u << 5) | (1u << 10));

}  // namespace

bool realizable5(unsigned code) { return (kRealizable5[(code >> 6) & 15] >> (code & 63)) & 1u; }

bool realizable4(unsigned code) { return (kRealizable4 >> (code & 15)) & 1u; }

}  // namespace kncr::catalog
