// AVX2 variants of the row kernels. Compiled with -mavx2 on x86-64; the
// dispatcher only hands these out after a runtime cpuid check.

#include "numfrac/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cassert>
#include <cstring>

namespace numfrac::kernels {
namespace {

// floor(x * m / 2^32) per 32-bit lane; m is a splat of the magic multiplier.
inline __m256i mulhi_epu32(__m256i x, __m256i m) {
    __m256i even = _mm256_mul_epu32(x, m);
    __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
    return _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

struct DivMagic {
    __m256i multiplier;
    __m256i divisor;
    std::uint32_t divisor_scalar;
};

inline DivMagic make_magic(std::uint32_t d) {
    // floor(2^32/d)+1 gives exact floor(x/d) for all x < 2^32/d; our
    // dividends stay below 2^16 and d <= 2^16, so the bound holds.
    const std::uint32_t m = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / d + 1);
    return {_mm256_set1_epi32(static_cast<int>(m)), _mm256_set1_epi32(static_cast<int>(d)), d};
}

inline __m256i divide(__m256i x, const DivMagic& magic) {
    return mulhi_epu32(x, magic.multiplier);
}

// Computes the transform for 8 consecutive b values starting at the vector
// `b`, with the digits of `a` prefolded into `a_digits`.
template <TransformKind Kind>
inline __m256i transform_lanes(__m256i b, const DivMagic& magic,
                               const std::uint32_t* a_digits, std::uint32_t digit_count) {
    __m256i value = _mm256_setzero_si256();
    std::uint32_t place = 1;
    for (std::uint32_t pos = 0; pos < digit_count; ++pos) {
        const __m256i q = divide(b, magic);
        const __m256i db = _mm256_sub_epi32(b, _mm256_mullo_epi32(q, magic.divisor));
        const __m256i da = _mm256_set1_epi32(static_cast<int>(a_digits[pos]));
        if constexpr (Kind == TransformKind::cvt) {
            const __m256i sum = _mm256_add_epi32(da, db);
            const __m256i carry =
                _mm256_cmpgt_epi32(sum, _mm256_set1_epi32(static_cast<int>(magic.divisor_scalar - 1)));
            value = _mm256_add_epi32(
                value, _mm256_and_si256(carry, _mm256_set1_epi32(static_cast<int>(place * magic.divisor_scalar))));
        } else if constexpr (Kind == TransformKind::evt_max) {
            const __m256i digit = _mm256_max_epu32(da, db);
            value = _mm256_add_epi32(value,
                                     _mm256_mullo_epi32(digit, _mm256_set1_epi32(static_cast<int>(place))));
        } else {
            const __m256i digit = _mm256_min_epu32(da, db);
            value = _mm256_add_epi32(value,
                                     _mm256_mullo_epi32(digit, _mm256_set1_epi32(static_cast<int>(place))));
        }
        b = q;
        place *= magic.divisor_scalar;
    }
    return value;
}

inline std::uint32_t digit_count_for(std::uint32_t base, std::uint32_t a, std::uint32_t b_max) {
    std::uint32_t hi = a > b_max ? a : b_max;
    std::uint32_t n = 0;
    while (hi > 0) {
        hi /= base;
        ++n;
    }
    return n;
}

inline __m256i iota_from(std::uint32_t b0) {
    return _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(b0)),
                            _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
}

// Base-2 rows reduce to pure bitwise ops.
inline __m256i transform_lanes_base2(TransformKind t, __m256i a, __m256i b) {
    switch (t) {
    case TransformKind::cvt:
        return _mm256_slli_epi32(_mm256_and_si256(a, b), 1);
    case TransformKind::evt_max:
        return _mm256_or_si256(a, b);
    case TransformKind::evt_min:
        return _mm256_and_si256(a, b);
    }
    return _mm256_setzero_si256();
}

template <TransformKind Kind>
void fill_row_generic(std::uint32_t base, std::uint32_t a, std::uint32_t b0,
                      std::uint32_t count, std::uint32_t* out) {
    const DivMagic magic = make_magic(base);
    const std::uint32_t nd = digit_count_for(base, a, b0 + count - 1);
    std::uint32_t a_digits[32];
    std::uint32_t rest = a;
    for (std::uint32_t i = 0; i < nd; ++i) {
        a_digits[i] = rest % base;
        rest /= base;
    }
    std::uint32_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256i v = transform_lanes<Kind>(iota_from(b0 + i), magic, a_digits, nd);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
    }
    if (i < count)
        scalar().fill_row(Kind, base, a, b0 + i, count - i, out + i);
}

void fill_row_avx2(TransformKind t, std::uint32_t base, std::uint32_t a,
                   std::uint32_t b0, std::uint32_t count, std::uint32_t* out) {
    assert(base >= 2);
    if (count == 0) return;
    if (base == 2) {
        const __m256i av = _mm256_set1_epi32(static_cast<int>(a));
        std::uint32_t i = 0;
        for (; i + 8 <= count; i += 8) {
            const __m256i v = transform_lanes_base2(t, av, iota_from(b0 + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
        }
        if (i < count) scalar().fill_row(t, 2, a, b0 + i, count - i, out + i);
        return;
    }
    switch (t) {
    case TransformKind::cvt: fill_row_generic<TransformKind::cvt>(base, a, b0, count, out); break;
    case TransformKind::evt_max: fill_row_generic<TransformKind::evt_max>(base, a, b0, count, out); break;
    case TransformKind::evt_min: fill_row_generic<TransformKind::evt_min>(base, a, b0, count, out); break;
    }
}

void match_row_avx2(TransformKind t, std::uint32_t base, std::uint32_t a,
                    std::uint32_t b0, std::uint32_t count, std::uint32_t target,
                    std::uint64_t* out_words) {
    const std::uint32_t words = (count + 63) / 64;
    std::memset(out_words, 0, words * sizeof(std::uint64_t));
    if (count == 0) return;

    const DivMagic magic = make_magic(base);
    const std::uint32_t nd = digit_count_for(base, a, b0 + count - 1);
    std::uint32_t a_digits[32];
    std::uint32_t rest = a;
    for (std::uint32_t i = 0; i < nd; ++i) {
        a_digits[i] = rest % base;
        rest /= base;
    }
    const __m256i target_v = _mm256_set1_epi32(static_cast<int>(target));
    const __m256i a_splat = _mm256_set1_epi32(static_cast<int>(a));

    std::uint32_t i = 0;
    for (; i + 8 <= count; i += 8) {
        __m256i v;
        if (base == 2)
            v = transform_lanes_base2(t, a_splat, iota_from(b0 + i));
        else
            switch (t) {
            case TransformKind::cvt:
                v = transform_lanes<TransformKind::cvt>(iota_from(b0 + i), magic, a_digits, nd);
                break;
            case TransformKind::evt_max:
                v = transform_lanes<TransformKind::evt_max>(iota_from(b0 + i), magic, a_digits, nd);
                break;
            default:
                v = transform_lanes<TransformKind::evt_min>(iota_from(b0 + i), magic, a_digits, nd);
                break;
            }
        const __m256i eq = _mm256_cmpeq_epi32(v, target_v);
        const auto mask8 =
            static_cast<std::uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
        out_words[i >> 6] |= std::uint64_t{mask8} << (i & 63);
    }
    for (; i < count; ++i) {
        std::uint32_t one;
        scalar().fill_row(t, base, a, b0 + i, 1, &one);
        if (one == target) out_words[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
}

} // namespace

namespace detail {
const KernelSet* avx2_impl() {
    static const KernelSet set{"avx2", fill_row_avx2, match_row_avx2};
    return &set;
}
} // namespace detail

} // namespace numfrac::kernels

#else // !__AVX2__

namespace numfrac::kernels::detail {
const KernelSet* avx2_impl() { return nullptr; }
} // namespace numfrac::kernels::detail

#endif
