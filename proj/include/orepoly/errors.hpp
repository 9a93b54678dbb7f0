#pragma once

#include <stdexcept>
#include <string>

namespace orepoly {

struct CarrierMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TwistMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidTwist : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotLocallyNilpotent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroModule : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidModule : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Resource caps: lattice enumeration, word enumeration, module size.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LatticeTooLarge : CapExceeded {
    using CapExceeded::CapExceeded;
};

struct NotStableUnderTwist : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal cross-check failed; indicates a bug, not bad input.
struct VerificationBug : std::logic_error {
    using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace orepoly
