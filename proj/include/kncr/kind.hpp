#pragma once

#include <string_view>

namespace kncr {

enum class DrawingKind { rectilinear, pseudolinear };

std::string_view kind_name(DrawingKind kind);  // "rect" / "pseudo"
DrawingKind parse_kind(std::string_view name);

}  // namespace kncr
