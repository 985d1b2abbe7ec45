#pragma once

#include "kncr/signature.hpp"

#include <cstdint>

namespace kncr::detail {

/// Side functor over a signature for sweeps centered at one vertex.
struct SigView {
    const Signature* d;
    std::uint32_t center;
    void recenter(std::uint32_t c) { center = c; }
    int operator()(std::uint32_t a, std::uint32_t b) const { return d->orient(center, a, b); }
};

}  // namespace kncr::detail
