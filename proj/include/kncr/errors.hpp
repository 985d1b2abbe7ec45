#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kncr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Three input points (or vertices) are collinear where general position is required.
class GeneralPositionError : public Error {
public:
    GeneralPositionError(std::uint32_t a, std::uint32_t b, std::uint32_t c)
        : Error("points " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                std::to_string(c) + " are collinear"),
          a(a), b(b), c(c) {}
    std::uint32_t a, b, c;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// A constructed or submitted drawing failed its exact re-check.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Input outside an operation's domain (too few vertices, bad index, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace kncr
