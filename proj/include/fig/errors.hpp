#pragma once

#include <stdexcept>
#include <string>

namespace fig {

// Malformed input text or JSON.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string &m) : std::runtime_error(m) {}
};

// Structural precondition of a reduction or solver violated
// (wrong block count, wrong quantifier roles, wrong goal family, ...).
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string &m) : std::runtime_error(m) {}
};

// Instance exceeds the desk-scale guard of an exact solver.
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string &m) : std::runtime_error(m) {}
};

} // namespace fig
