#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace numfrac {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value does not fit in the requested digit width.
class ValueTooWide : public Error {
public:
    using Error::Error;
};

// An exact result would exceed the 64-bit natural range.
class RangeOverflow : public Error {
public:
    using Error::Error;
};

// A dense grid would exceed the configured materialization cap.
class GridTooLarge : public Error {
public:
    using Error::Error;
};

// A pattern target is out of range for the grid it is applied to.
class InvalidTarget : public Error {
public:
    using Error::Error;
};

// An operation that needs a non-empty point set received an empty one.
class DegenerateGrid : public Error {
public:
    using Error::Error;
};

// An image format cannot represent the requested content.
class FormatMismatch : public Error {
public:
    using Error::Error;
};

// Radix of a positional number system; always at least 2.
class Base {
public:
    explicit Base(std::uint64_t value) : value_(value) {
        if (value < 2)
            throw Error("base must be at least 2, got " + std::to_string(value));
    }

    std::uint64_t value() const noexcept { return value_; }

    friend bool operator==(Base a, Base b) noexcept { return a.value_ == b.value_; }
    friend bool operator!=(Base a, Base b) noexcept { return a.value_ != b.value_; }

private:
    std::uint64_t value_;
};

enum class TransformKind { cvt, evt_max, evt_min };

const char* to_string(TransformKind t) noexcept;

// Overflow-checked helpers over 64-bit naturals. The empty optional means
// the exact result does not fit.
std::optional<std::uint64_t> checked_add(std::uint64_t a, std::uint64_t b) noexcept;
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) noexcept;
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint32_t exp) noexcept;

} // namespace numfrac
