#include "numfrac/types.hpp"

namespace numfrac {

const char* to_string(TransformKind t) noexcept {
    switch (t) {
    case TransformKind::cvt: return "cvt";
    case TransformKind::evt_max: return "evtmax";
    case TransformKind::evt_min: return "evtmin";
    }
    return "?";
}

std::optional<std::uint64_t> checked_add(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
    return r;
}

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint32_t exp) noexcept {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        auto next = checked_mul(r, base);
        if (!next) return std::nullopt;
        r = *next;
    }
    return r;
}

} // namespace numfrac
