#pragma once

#include <stdexcept>
#include <string>

namespace tangles {

/// Base class for everything this library throws on bad input.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A size or enumeration limit was exceeded (oracle carrier too large,
/// enumeration request too big, partition search out of bounds).
class bound_error : public input_error {
public:
    using input_error::input_error;
};

/// A stored table or view violates its structural invariants.
class representation_error : public input_error {
public:
    using input_error::input_error;
};

/// A semantic precondition failed (e.g. a set that must be open is not).
class precondition_error : public input_error {
public:
    using input_error::input_error;
};

/// Syntax error in a formula or model file; `position` is a 0-based
/// character offset (formulas) or 1-based line number (model files).
class parse_error : public input_error {
public:
    parse_error(const std::string& message, std::size_t position)
        : input_error(message), position(position) {}

    std::size_t position;
};

} // namespace tangles
