#include "kncr/io.hpp"

#include "kncr/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

namespace kncr {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'P', 'S', 'L', 'S', 'I', 'G', '0', '1'};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool skippable(std::string_view line) {
    line = trim(line);
    return line.empty() || line.front() == '#';
}

std::uint64_t parse_count(std::string_view text, std::size_t line) {
    try {
        const Integer v = parse_integer(trim(text));
        if (v < 0 || !v.fits_ulong_p()) throw std::invalid_argument("out of range");
        return v.get_ui();
    } catch (const std::invalid_argument&) {
        throw ParseError("expected a vertex count, got '" + std::string(trim(text)) + "'", line);
    }
}

std::string slurp(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

PointSet read_points(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::uint64_t n = 0;
    bool have_n = false;
    std::vector<Point> pts;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        if (!have_n) {
            n = parse_count(line, lineno);
            have_n = true;
            pts.reserve(n);
            continue;
        }
        std::istringstream fields(line);
        std::string xs, ys, extra;
        if (!(fields >> xs >> ys) || (fields >> extra))
            throw ParseError("expected two integers \"x y\"", lineno);
        try {
            pts.push_back({parse_integer(xs), parse_integer(ys)});
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!have_n) throw ParseError("missing vertex count", lineno);
    if (pts.size() != n)
        throw ParseError("expected " + std::to_string(n) + " points, found " + std::to_string(pts.size()), lineno);
    return PointSet(std::move(pts));
}

void write_points(std::ostream& out, const PointSet& s) {
    out << s.size() << '\n';
    for (const auto& p : s.points()) out << p.x.get_str() << ' ' << p.y.get_str() << '\n';
}

PointSet parse_latex_points(std::string_view text) {
    std::vector<Point> pts;
    std::size_t pos = 0;
    std::size_t expected = 1;
    std::size_t counted_to = 0, line = 1;
    auto line_of = [&](std::size_t at) {
        line += static_cast<std::size_t>(std::count(text.begin() + static_cast<std::ptrdiff_t>(counted_to),
                                                    text.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
        counted_to = at;
        return line;
    };
    while ((pos = text.find("p_{", pos)) != std::string_view::npos) {
        const std::size_t close = text.find('}', pos);
        if (close == std::string_view::npos) throw ParseError("unterminated point label", line_of(pos));
        const std::string_view label = text.substr(pos + 3, close - pos - 3);
        if (parse_count(label, line_of(pos)) != expected)
            throw ParseError("point labels must run 1, 2, 3, ...; expected p_{" + std::to_string(expected) + "}",
                             line_of(pos));
        std::size_t end = text.find("p_{", close);
        const std::size_t stop = text.find("\\end{itemize}", close);
        if (stop < end) end = stop;
        std::string_view body = text.substr(close + 1, end == std::string_view::npos ? end : end - close - 1);
        if (const auto assign = body.find(":="); assign != std::string_view::npos) body.remove_prefix(assign + 2);
        // Strip markup: "$", parentheses, "\\", commas, item brackets.
        std::vector<std::string> numbers;
        std::string current;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            const char c = i < body.size() ? body[i] : ' ';
            const bool digit = std::isdigit(static_cast<unsigned char>(c));
            if (digit || ((c == '-' || c == '+') && current.empty() && i + 1 < body.size() &&
                          std::isdigit(static_cast<unsigned char>(body[i + 1])))) {
                current.push_back(c);
            } else if (!current.empty()) {
                numbers.push_back(std::move(current));
                current.clear();
            }
        }
        if (numbers.size() != 2)
            throw ParseError("point p_{" + std::to_string(expected) + "} must have exactly two coordinates",
                             line_of(pos));
        pts.push_back({parse_integer(numbers[0]), parse_integer(numbers[1])});
        ++expected;
        pos = close;
    }
    if (pts.empty()) throw ParseError("no p_{i} entries found", 1);
    return PointSet(std::move(pts));
}

Signature read_signature(std::istream& in) {
    std::array<char, 8> head{};
    in.read(head.data(), 8);
    const auto got = in.gcount();
    if (got == 8 && std::memcmp(head.data(), kMagic, 8) == 0) {
        unsigned char nb[8];
        if (!in.read(reinterpret_cast<char*>(nb), 8)) throw ParseError("truncated binary signature header", 1);
        std::uint64_t n = 0;
        for (int i = 7; i >= 0; --i) n = (n << 8) | nb[i];
        if (n < 3 || n >= (1u << 16)) throw ParseError("unsupported vertex count " + std::to_string(n), 1);
        Signature d(static_cast<std::uint32_t>(n), false);
        const std::uint64_t bits = d.triple_count();
        std::vector<unsigned char> bytes((bits + 7) / 8);
        if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
            throw ParseError("truncated binary signature payload", 1);
        auto& words = d.words();
        for (std::size_t b = 0; b < bytes.size(); ++b) words[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
        if (bits % 64 != 0) words.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
        return d;
    }
    std::string text(head.data(), static_cast<std::size_t>(got));
    text += slurp(in);

    std::size_t lineno = 1, pos = 0;
    bool have_n = false;
    Signature d;
    std::uint64_t r = 0, total = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string_view line(text.data() + pos, eol - pos);
        if (!skippable(line)) {
            if (!have_n) {
                const auto n = parse_count(line, lineno);
                if (n < 3 || n >= (1u << 16)) throw ParseError("unsupported vertex count " + std::to_string(n), lineno);
                d = Signature(static_cast<std::uint32_t>(n), false);
                total = d.triple_count();
                have_n = true;
            } else {
                for (char c : line) {
                    if (c == '+' || c == '-') {
                        if (r == total) throw ParseError("more than C(n,3) orientations", lineno);
                        if (c == '+') d.set_bit(r, true);
                        ++r;
                    } else if (!std::isspace(static_cast<unsigned char>(c))) {
                        throw ParseError(std::string("unexpected character '") + c + "'", lineno);
                    }
                }
            }
        }
        pos = eol + 1;
        ++lineno;
    }
    if (!have_n) throw ParseError("missing vertex count", lineno);
    if (r != total)
        throw ParseError("expected " + std::to_string(total) + " orientations, found " + std::to_string(r), lineno);
    return d;
}

void write_signature_text(std::ostream& out, const Signature& d) {
    out << d.size() << '\n';
    const std::uint64_t total = d.triple_count();
    std::string line;
    for (std::uint64_t r = 0; r < total; ++r) {
        line.push_back(d.bit(r) ? '+' : '-');
        if (line.size() == 80 || r + 1 == total) {
            line.push_back('\n');
            out << line;
            line.clear();
        }
    }
}

void write_signature_binary(std::ostream& out, const Signature& d) {
    out.write(kMagic, 8);
    std::uint64_t n = d.size();
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((n >> (8 * i)) & 0xff));
    const std::uint64_t bytes = (d.triple_count() + 7) / 8;
    const auto& words = d.words();
    for (std::uint64_t b = 0; b < bytes; ++b) out.put(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xff));
}

DrawingKind detect_kind(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::string head(4096, '\0');
    in.read(head.data(), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));
    if (head.size() >= 8 && std::memcmp(head.data(), kMagic, 8) == 0) return DrawingKind::pseudolinear;
    if (head.find("p_{") != std::string::npos) return DrawingKind::rectilinear;
    std::istringstream lines(head);
    std::string line;
    bool seen_n = false;
    while (std::getline(lines, line)) {
        if (skippable(line)) continue;
        if (!seen_n) {
            seen_n = true;
            continue;
        }
        const auto t = trim(line);
        const bool signs = t.find_first_not_of("+-") == std::string_view::npos;
        return signs ? DrawingKind::pseudolinear : DrawingKind::rectilinear;
    }
    return DrawingKind::rectilinear;
}

PointSet load_points(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    const std::string text = slurp(in);
    if (text.find("p_{") != std::string::npos) return parse_latex_points(text);
    std::istringstream ss(text);
    return read_points(ss);
}

Signature load_signature(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_signature(in);
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    thread_local std::mt19937_64 salt(std::random_device{}());
    const fs::path tmp = path.string() + ".tmp" + std::to_string(salt() % 1000000007);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void save_points(const fs::path& path, const PointSet& s) {
    std::ostringstream out;
    write_points(out, s);
    write_file_atomic(path, out.str());
}

void save_signature(const fs::path& path, const Signature& d, bool binary) {
    std::ostringstream out;
    if (binary)
        write_signature_binary(out, d);
    else
        write_signature_text(out, d);
    write_file_atomic(path, out.str());
}

}  // namespace kncr
