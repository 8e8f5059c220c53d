#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polygeom {

/// Domain error carrying a short machine-readable code (`syntax`, `arity`,
/// `off-curve`, ...). The CLI prints these as `error:<code>: <message>`.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(std::string code, const std::string& message, std::size_t position)
        : Error(std::move(code), message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace polygeom
