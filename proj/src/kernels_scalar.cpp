#include <cassert>
#include <cstring>

#include "numfrac/kernels.hpp"

namespace numfrac::kernels {

namespace {

inline std::uint32_t scalar_one(TransformKind t, std::uint32_t base, std::uint32_t a,
                                std::uint32_t b) {
    std::uint32_t result = 0;
    std::uint32_t place = 1;
    while (a > 0 || b > 0) {
        const std::uint32_t da = a % base;
        const std::uint32_t db = b % base;
        a /= base;
        b /= base;
        switch (t) {
        case TransformKind::cvt:
            // carry from position i is worth base^(i+1)
            if (da + db >= base) result += place * base;
            break;
        case TransformKind::evt_max:
            result += place * (da > db ? da : db);
            break;
        case TransformKind::evt_min:
            result += place * (da < db ? da : db);
            break;
        }
        place *= base;
    }
    return result;
}

void fill_row_scalar(TransformKind t, std::uint32_t base, std::uint32_t a,
                     std::uint32_t b0, std::uint32_t count, std::uint32_t* out) {
    assert(base >= 2);
    for (std::uint32_t i = 0; i < count; ++i)
        out[i] = scalar_one(t, base, a, b0 + i);
}

void match_row_scalar(TransformKind t, std::uint32_t base, std::uint32_t a,
                      std::uint32_t b0, std::uint32_t count, std::uint32_t target,
                      std::uint64_t* out_words) {
    const std::uint32_t words = (count + 63) / 64;
    std::memset(out_words, 0, words * sizeof(std::uint64_t));
    for (std::uint32_t i = 0; i < count; ++i) {
        if (scalar_one(t, base, a, b0 + i) == target)
            out_words[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
}

} // namespace

const KernelSet& scalar() {
    static const KernelSet set{"scalar", fill_row_scalar, match_row_scalar};
    return set;
}

} // namespace numfrac::kernels
