#pragma once

#include <cstdint>
#include <vector>

#include "numfrac/types.hpp"

namespace numfrac {

// Fixed-width digit expansion of a natural number, least-significant digit
// first, every digit in [0, base).
struct DigitVec {
    Base base;
    std::vector<std::uint64_t> digits;
};

// Expands `value` to exactly `width` base-`base` digits (zero-padded).
// Throws ValueTooWide if value >= base^width, RangeOverflow if base^width
// does not fit in 64 bits.
DigitVec to_digits(std::uint64_t value, Base base, std::uint32_t width);

// Evaluates sum(d[i] * base^i). Throws RangeOverflow if the value does not
// fit in 64 bits.
std::uint64_t from_digits(const DigitVec& d);

// Carry value of a + b in the given base: each digit pair's carry, stored one
// position left of where it arose. Always divisible by the base.
std::uint64_t cvt(std::uint64_t a, std::uint64_t b, Base base);

// Digit-wise sum modulo the base. Satisfies a + b = cvt(a,b) + sv(a,b).
std::uint64_t sv(std::uint64_t a, std::uint64_t b, Base base);

// Digit-wise maximum.
std::uint64_t evt_max(std::uint64_t a, std::uint64_t b, Base base);

// Digit-wise minimum. Satisfies evt_max(a,b) + evt_min(a,b) = a + b.
std::uint64_t evt_min(std::uint64_t a, std::uint64_t b, Base base);

// Dispatch by kind; sv is not a grid transform and is not included.
std::uint64_t apply_transform(TransformKind t, std::uint64_t a, std::uint64_t b, Base base);

} // namespace numfrac
