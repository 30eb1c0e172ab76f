#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace collabpred {

/// Domain error carrying a stable machine-readable code ("SelfMessage",
/// "DuplicateCaseId", ...) next to the human-readable detail. The CLI prints
/// the code on stderr and exits 1; tests match on the code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail.empty() ? code : code + ": " + detail),
          code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace collabpred
