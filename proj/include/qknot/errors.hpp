#pragma once

#include <stdexcept>
#include <string>

namespace qknot {

// Invalid user input: malformed files, bad encodings, violated preconditions.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap was exceeded; the answer is unknown, not wrong.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant failed (convention bug, nonzero division remainder).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace qknot
