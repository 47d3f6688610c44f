#pragma once

#include <cstdint>
#include <vector>

#include "numfrac/gridgen.hpp"
#include "numfrac/types.hpp"

namespace numfrac {

// The two closed-form dimension families.
enum class DimFamily { cvt, evt };

const char* to_string(DimFamily f) noexcept;

// One table row: base n, number of self-similar copies N, scale denominator
// 1/S, and D = log(N)/log(1/S).
struct DimensionRecord {
    std::uint64_t base;
    std::uint64_t copies;
    std::uint64_t scale_denominator;
    double dimension;
};

// Per-scale occupied-box counts plus the fitted log-log slope.
struct BoxCountFit {
    std::vector<std::uint64_t> scales; // box sides, powers of the grid base
    std::vector<std::uint64_t> counts; // occupied boxes per scale
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

// Finite-range convergence summary toward the limiting dimension.
struct ConvergenceReport {
    DimFamily family;
    std::uint64_t n_max;
    bool monotone;
    double final_value;
    double limit;    // 2 for cvt, 1 for evt
    double final_gap; // |final_value - limit|
};

// log(n(n+1)/2) / log(n): the cvt zero-pattern dimension.
double similarity_dim_cvt(Base n);

// log(2n-1) / log(n): the evt top-pattern dimension.
double similarity_dim_evt(Base n);

// One record per base in [n_from, n_to].
std::vector<DimensionRecord> dimension_table(Base n_from, Base n_to, DimFamily family);

// Independent box-counting estimate over scales base^j, j = 0..depth, fitted
// by ordinary least squares over all scales. Throws DegenerateGrid on an
// empty grid; requires depth >= 2.
BoxCountFit box_count(const IndicatorGrid& grid);

// Checks strict monotonicity of the family over n = 2..n_max and the gap to
// the limiting value at n_max.
ConvergenceReport verify_convergence(DimFamily family, std::uint64_t n_max);

// Overlay increment analysis: the (n-1)-ary cvt zero pattern is pasted onto
// the n-ary one over the same integer domain [0, render_side)^2; the overflow
// mask keeps the points of the pasted pattern that the n-ary pattern does not
// cover (carry-free in base n-1, carrying in base n). The mask is box-counted
// with scales that are powers of n(n-1).
//
// render_side must be a power of n(n-1), at least its square; 0 selects the
// default (n(n-1))^3.
BoxCountFit increment_analysis(Base n, std::uint64_t render_side = 0,
                               std::uint64_t dense_cap = kDefaultDenseCap);

// The overflow mask itself (exposed for inspection and tests). The
// pasted-base zero pattern goes on top of the canvas-base one; bits mark
// cells carry-free in pasted_base with a carry in canvas_base.
IndicatorGrid overlay_overflow_mask(Base pasted_base, Base canvas_base, std::uint64_t render_side,
                                    std::uint64_t dense_cap = kDefaultDenseCap);

} // namespace numfrac
