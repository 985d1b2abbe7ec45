#pragma once

#include "kncr/geometry.hpp"
#include "kncr/kind.hpp"
#include "kncr/signature.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace kncr {

// Point-set text format: first line n, then n lines "x y" (signed decimal integers).
// Blank lines and lines starting with '#' are ignored.
PointSet read_points(std::istream& in);
void write_points(std::ostream& out, const PointSet& s);

/// Itemized listing of the form "\item[$p_{i}:=$] $(x$, \\ $y$)", one entry per point.
PointSet parse_latex_points(std::string_view text);

// Signature text format: first line n, then C(n,3) '+'/'-' characters in lexicographic
// triple order with arbitrary line breaks; '#' starts a comment line.
// Binary format: "PSLSIG01", n as 8-byte little endian, packed bits (1 = '+'), LSB first.
Signature read_signature(std::istream& in);
void write_signature_text(std::ostream& out, const Signature& d);
void write_signature_binary(std::ostream& out, const Signature& d);

/// Guesses the payload kind from its contents (binary magic, LaTeX markup, or the first data line).
DrawingKind detect_kind(const std::filesystem::path& path);

PointSet load_points(const std::filesystem::path& path);
Signature load_signature(const std::filesystem::path& path);
void save_points(const std::filesystem::path& path, const PointSet& s);
void save_signature(const std::filesystem::path& path, const Signature& d, bool binary = false);

/// Writes via a sibling temporary file and rename, so readers never see partial content.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace kncr
