#pragma once

#include <stdexcept>
#include <string>

namespace mdep {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorKind {
    invalid_argument,
    domain,
    arity,
    parse,
    resource,
    unsupported,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, const std::string& what) {
    if (!condition) fail(ErrorKind::invalid_argument, what);
}

}  // namespace mdep
