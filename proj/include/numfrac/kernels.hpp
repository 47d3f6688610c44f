#pragma once

#include <cstdint>

#include "numfrac/types.hpp"

namespace numfrac::kernels {

// Row kernels for grid materialization. One row fixes `a` and sweeps
// b = b0 .. b0+count-1; this is the hot inner loop of gridgen.
//
// Preconditions (enforced by gridgen, asserted in debug builds):
//   base >= 2, and all of a, b0+count-1 are < 2^16, so every transform
//   value fits comfortably in 32 bits (cvt(a,b) <= a+b).
struct KernelSet {
    const char* name;

    // out[i] = t(a, b0+i) in the given base.
    void (*fill_row)(TransformKind t, std::uint32_t base, std::uint32_t a,
                     std::uint32_t b0, std::uint32_t count, std::uint32_t* out);

    // Sets bit i of out_words (LSB-first within each 64-bit word) iff
    // t(a, b0+i) == target. Writes ceil(count/64) words.
    void (*match_row)(TransformKind t, std::uint32_t base, std::uint32_t a,
                      std::uint32_t b0, std::uint32_t count, std::uint32_t target,
                      std::uint64_t* out_words);
};

// Portable reference kernels; the ground truth the SIMD variants are
// equivalence-tested against.
const KernelSet& scalar();

// AVX2 kernels, or nullptr when the build or the CPU lacks AVX2.
const KernelSet* avx2();

// Best available set. Honors NUMFRAC_KERNEL=scalar|avx2 (read once) so runs
// can pin a variant without rebuilding.
const KernelSet& active();

} // namespace numfrac::kernels
