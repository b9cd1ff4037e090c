#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nwb {

// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Boundary widths of two operands do not fit together.
class boundary_mismatch : public error {
public:
    using error::error;
};

// A place, transition, port, variable or component name that does not exist.
class unknown_name : public error {
public:
    using error::error;
};

class invalid_argument : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    parse_error(std::size_t position, const std::string& message)
        : error("at position " + std::to_string(position) + ": " + message), position_(position) {}

    [[nodiscard]] std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

} // namespace nwb
