#pragma once

#include <stdexcept>
#include <string>

namespace pvauction {

// Malformed text input (identifiers, numbers, dates, CSV structure).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A register row or API argument violates a documented invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pvauction
