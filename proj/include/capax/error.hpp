#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace capax {

enum class ErrorCode {
    Syntax,        // malformed input text
    Domain,        // value outside the supported domain (e.g. Moore degree 1)
    Unsupported,   // operation not defined for this input
    ResourceLimit, // order/cap exceeded
    Invariant,     // malformed internal structure (bad EndoMatrix etc.)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::optional<std::size_t> offset = std::nullopt)
        : std::runtime_error(std::move(message)), code_(code), offset_(offset) {}

    ErrorCode code() const { return code_; }
    std::optional<std::size_t> offset() const { return offset_; }

    const char* code_name() const {
        switch (code_) {
        case ErrorCode::Syntax: return "syntax";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Unsupported: return "unsupported";
        case ErrorCode::ResourceLimit: return "resource-limit";
        case ErrorCode::Invariant: return "invariant";
        }
        return "unknown";
    }

private:
    ErrorCode code_;
    std::optional<std::size_t> offset_;
};

[[noreturn]] inline void throw_syntax(const std::string& msg, std::size_t offset) {
    throw Error(ErrorCode::Syntax, msg, offset);
}

} // namespace capax
