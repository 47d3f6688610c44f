#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "numfrac/types.hpp"

namespace numfrac {

// Default cap on the side of a densely materialized grid (bits: ~32 MB).
inline constexpr std::uint64_t kDefaultDenseCap = 16384;

// Hard ceiling regardless of configured cap: the row kernels carry 16-bit
// coordinates through 32-bit lanes.
inline constexpr std::uint64_t kKernelSideLimit = 65536;

// The (base, depth) description of an n^m x n^m table domain.
struct GridSpec {
    Base base;
    std::uint32_t depth;

    GridSpec(Base b, std::uint32_t d) : base(b), depth(d) {
        if (d < 1) throw Error("grid depth must be at least 1");
        if (!checked_pow(base.value(), depth))
            throw RangeOverflow("grid side base^depth exceeds 64 bits");
    }

    std::uint64_t side() const { return *checked_pow(base.value(), depth); }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.base == b.base && a.depth == b.depth;
    }
};

// Which cells to mark: transform value equal to a fixed target.
struct PatternQuery {
    enum class Target { zero, value, top_value };

    TransformKind transform;
    Target target;
    std::uint64_t k = 0; // used when target == Target::value

    static PatternQuery zero(TransformKind t) { return {t, Target::zero, 0}; }
    static PatternQuery value(TransformKind t, std::uint64_t k) { return {t, Target::value, k}; }
    static PatternQuery top(TransformKind t) { return {t, Target::top_value, 0}; }

    // Concrete target value for the given grid. Throws InvalidTarget when the
    // value is out of range (cvt targets live below base^(depth+1), evt
    // targets below base^depth).
    std::uint64_t resolve(const GridSpec& spec) const;
};

// Dense side x side table of transform values, row-major; cell(a, b) with a
// indexing rows downward and b columns rightward.
class ValueTable {
public:
    ValueTable(GridSpec spec, std::vector<std::uint32_t> cells)
        : spec_(spec), cells_(std::move(cells)) {}

    const GridSpec& spec() const { return spec_; }
    std::uint64_t side() const { return spec_.side(); }
    std::uint64_t cell(std::uint64_t a, std::uint64_t b) const {
        return cells_[a * side() + b];
    }
    std::span<const std::uint32_t> row(std::uint64_t a) const {
        return {cells_.data() + a * side(), static_cast<std::size_t>(side())};
    }

private:
    GridSpec spec_;
    std::vector<std::uint32_t> cells_;
};

// Dense side x side bit grid, row-major with 64-bit word rows.
class IndicatorGrid {
public:
    IndicatorGrid(GridSpec spec, std::uint64_t side);

    const GridSpec& spec() const { return spec_; }
    std::uint64_t side() const { return side_; }
    std::uint64_t words_per_row() const { return stride_; }

    bool bit(std::uint64_t a, std::uint64_t b) const {
        return (words_[a * stride_ + (b >> 6)] >> (b & 63)) & 1;
    }
    void set_bit(std::uint64_t a, std::uint64_t b) {
        words_[a * stride_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    }

    std::uint64_t* row_words(std::uint64_t a) { return words_.data() + a * stride_; }
    const std::uint64_t* row_words(std::uint64_t a) const { return words_.data() + a * stride_; }

    std::uint64_t popcount() const;

    friend bool operator==(const IndicatorGrid& x, const IndicatorGrid& y) {
        return x.side_ == y.side_ && x.words_ == y.words_;
    }

private:
    GridSpec spec_;
    std::uint64_t side_;
    std::uint64_t stride_;
    std::vector<std::uint64_t> words_;
};

// cell(a,b) = t(a,b) for all a,b < side. Throws GridTooLarge beyond the cap.
ValueTable build_table(const GridSpec& spec, TransformKind t,
                       std::uint64_t dense_cap = kDefaultDenseCap);

// Streaming variant for sides above the dense cap: rows are produced in
// order, one at a time, without materializing the table.
void stream_table_rows(const GridSpec& spec, TransformKind t,
                       const std::function<void(std::uint64_t a, std::span<const std::uint32_t>)>& sink);

// Bit set exactly where t(a,b) equals the resolved target.
IndicatorGrid indicator(const GridSpec& spec, const PatternQuery& q,
                        std::uint64_t dense_cap = kDefaultDenseCap);

// Closed-form cell count of an indicator: a product of per-digit pair counts.
// Targets that no (a,b) produces yield 0.
std::uint64_t expected_cell_count(const GridSpec& spec, const PatternQuery& q);

// The depth-1 indicator: the n x n substitution generator of the pattern.
IndicatorGrid ifs_generator(Base base, const PatternQuery& q);

// Substitution iteration: each set cell replaced by a scaled copy of the
// generator, `depth` levels deep (depth 1 returns the generator itself).
IndicatorGrid iterate_generator(const IndicatorGrid& gen, std::uint32_t depth,
                                std::uint64_t dense_cap = kDefaultDenseCap);

} // namespace numfrac
