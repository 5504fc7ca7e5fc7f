#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hnpoly {

// Every domain-level failure carries a stable machine-readable code
// (e.g. "NonPositiveWidth", "UnsplittableAt") next to a human detail
// string. The CLI maps these to {"error": code, "detail": ...}.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace hnpoly
