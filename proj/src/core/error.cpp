#include "mdep/error.hpp"

namespace mdep {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid argument";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::arity: return "arity error";
        case ErrorKind::parse: return "parse error";
        case ErrorKind::resource: return "resource error";
        case ErrorKind::unsupported: return "unsupported";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace mdep
