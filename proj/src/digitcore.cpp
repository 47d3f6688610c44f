#include "numfrac/digitcore.hpp"

namespace numfrac {

DigitVec to_digits(std::uint64_t value, Base base, std::uint32_t width) {
    if (width < 1) throw Error("digit width must be at least 1");
    auto cap = checked_pow(base.value(), width);
    if (!cap)
        throw RangeOverflow("base^width exceeds the 64-bit natural range");
    if (value >= *cap)
        throw ValueTooWide("value " + std::to_string(value) + " needs more than " +
                           std::to_string(width) + " base-" + std::to_string(base.value()) +
                           " digits");
    DigitVec d{base, std::vector<std::uint64_t>(width, 0)};
    for (std::uint32_t i = 0; i < width; ++i) {
        d.digits[i] = value % base.value();
        value /= base.value();
    }
    return d;
}

std::uint64_t from_digits(const DigitVec& d) {
    const std::uint64_t n = d.base.value();
    std::uint64_t result = 0;
    // Horner evaluation from the most significant digit down.
    for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
        if (*it >= n) throw Error("digit out of range for base");
        auto scaled = checked_mul(result, n);
        if (!scaled) throw RangeOverflow("digit expansion exceeds 64 bits");
        auto sum = checked_add(*scaled, *it);
        if (!sum) throw RangeOverflow("digit expansion exceeds 64 bits");
        result = *sum;
    }
    return result;
}

namespace {

// Shared digit walk. Calls digit_op(da, db, place, place_ok) for each digit
// position; place = base^i, or nullopt once base^i no longer fits (further
// nonzero contributions must then overflow).
template <typename F>
std::uint64_t digit_fold(std::uint64_t a, std::uint64_t b, Base base, F&& digit_op) {
    const std::uint64_t n = base.value();
    std::uint64_t result = 0;
    std::optional<std::uint64_t> place = 1;
    while (a > 0 || b > 0) {
        const std::uint64_t da = a % n;
        const std::uint64_t db = b % n;
        a /= n;
        b /= n;
        const std::uint64_t contribution = digit_op(da, db);
        if (contribution != 0) {
            if (!place) throw RangeOverflow("transform result exceeds 64 bits");
            auto scaled = checked_mul(contribution, *place);
            if (!scaled) throw RangeOverflow("transform result exceeds 64 bits");
            auto sum = checked_add(result, *scaled);
            if (!sum) throw RangeOverflow("transform result exceeds 64 bits");
            result = *sum;
        }
        place = place ? checked_mul(*place, n) : std::nullopt;
    }
    return result;
}

} // namespace

std::uint64_t cvt(std::uint64_t a, std::uint64_t b, Base base) {
    const std::uint64_t n = base.value();
    // The carry from position i lands at position i+1, so fold with the carry
    // scaled by one extra factor of the base. Each carry digit is 0 or 1
    // because da + db <= 2(n-1) < 2n.
    return digit_fold(a, b, base, [n](std::uint64_t da, std::uint64_t db) -> std::uint64_t {
        return da + db >= n ? n : 0;
    });
}

std::uint64_t sv(std::uint64_t a, std::uint64_t b, Base base) {
    const std::uint64_t n = base.value();
    return digit_fold(a, b, base, [n](std::uint64_t da, std::uint64_t db) {
        return (da + db) % n;
    });
}

std::uint64_t evt_max(std::uint64_t a, std::uint64_t b, Base base) {
    return digit_fold(a, b, base, [](std::uint64_t da, std::uint64_t db) {
        return da > db ? da : db;
    });
}

std::uint64_t evt_min(std::uint64_t a, std::uint64_t b, Base base) {
    return digit_fold(a, b, base, [](std::uint64_t da, std::uint64_t db) {
        return da < db ? da : db;
    });
}

std::uint64_t apply_transform(TransformKind t, std::uint64_t a, std::uint64_t b, Base base) {
    switch (t) {
    case TransformKind::cvt: return cvt(a, b, base);
    case TransformKind::evt_max: return evt_max(a, b, base);
    case TransformKind::evt_min: return evt_min(a, b, base);
    }
    throw Error("unknown transform");
}

} // namespace numfrac
