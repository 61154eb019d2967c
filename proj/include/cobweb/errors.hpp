#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cobweb {

// A caller-side contract was violated: bad index range, a sequence that does
// not satisfy the recurrence an algorithm depends on, a zero-size level.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured cap (chain universe, placement universe, search nodes) would be
// exceeded. Never raised after partial output has been produced silently.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& cap_name, std::uint64_t cap, const std::string& what)
        : std::runtime_error(what + " (cap " + cap_name + "=" + std::to_string(cap) + ")"),
          cap_name_(cap_name), cap_(cap) {}

    const std::string& cap_name() const noexcept { return cap_name_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::string cap_name_;
    std::uint64_t cap_;
};

// Malformed descriptor / tiling JSON.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cobweb
