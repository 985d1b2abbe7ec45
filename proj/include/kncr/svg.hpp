#pragma once

#include "kncr/geometry.hpp"
#include "kncr/signature.hpp"

#include <filesystem>
#include <string>

namespace kncr {

/// Points and all C(n,2) segments, scaled exactly into a square viewport, with a caption
/// giving n and the crossing count.
std::string svg_of(const PointSet& s);

/// Wiring diagram: a hull vertex is sent to infinity and the other n-1 vertices become wires
/// that swap once per pair, in the order given by their rotations.
std::string svg_of(const Signature& d);

void export_svg(const PointSet& s, const std::filesystem::path& out);
void export_svg(const Signature& d, const std::filesystem::path& out);

}  // namespace kncr
