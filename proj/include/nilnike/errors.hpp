#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nilnike {

// All library failures carry a stable machine-readable code ("NonUnit",
// "MissingShare", ...) next to the human-readable message. The CLI maps the
// code into its JSON error object, and tests match on it.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

} // namespace nilnike
