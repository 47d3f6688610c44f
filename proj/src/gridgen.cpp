#include <bit>
#include <cstring>

#include "numfrac/gridgen.hpp"
#include "numfrac/kernels.hpp"

namespace numfrac {

namespace {

void check_dense(const GridSpec& spec, std::uint64_t dense_cap) {
    const std::uint64_t side = spec.side();
    if (side > dense_cap)
        throw GridTooLarge("side " + std::to_string(side) + " exceeds dense cap " +
                           std::to_string(dense_cap));
    if (side > kKernelSideLimit)
        throw GridTooLarge("side " + std::to_string(side) + " exceeds the kernel limit " +
                           std::to_string(kKernelSideLimit));
}

} // namespace

std::uint64_t PatternQuery::resolve(const GridSpec& spec) const {
    const std::uint64_t n = spec.base.value();
    switch (target) {
    case Target::zero:
        return 0;
    case Target::top_value:
        return spec.side() - 1; // the all-(base-1)-digits value
    case Target::value: {
        std::optional<std::uint64_t> limit;
        if (transform == TransformKind::cvt)
            limit = checked_mul(spec.side(), n); // base^(depth+1)
        else
            limit = spec.side();
        if (limit && k >= *limit)
            throw InvalidTarget("target " + std::to_string(k) + " out of range (< " +
                                std::to_string(*limit) + ")");
        return k;
    }
    }
    throw Error("unknown target kind");
}

IndicatorGrid::IndicatorGrid(GridSpec spec, std::uint64_t side)
    : spec_(spec), side_(side), stride_((side + 63) / 64), words_(side * stride_, 0) {}

std::uint64_t IndicatorGrid::popcount() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

ValueTable build_table(const GridSpec& spec, TransformKind t, std::uint64_t dense_cap) {
    check_dense(spec, dense_cap);
    const auto side = static_cast<std::uint32_t>(spec.side());
    const auto base = static_cast<std::uint32_t>(spec.base.value());
    std::vector<std::uint32_t> cells(static_cast<std::size_t>(side) * side);
    const auto& k = kernels::active();
    // Rows are independent; any row order or concurrency produces the same table.
    for (std::uint32_t a = 0; a < side; ++a)
        k.fill_row(t, base, a, 0, side, cells.data() + static_cast<std::size_t>(a) * side);
    return {spec, std::move(cells)};
}

void stream_table_rows(const GridSpec& spec, TransformKind t,
                       const std::function<void(std::uint64_t, std::span<const std::uint32_t>)>& sink) {
    const std::uint64_t side = spec.side();
    if (side > kKernelSideLimit)
        throw GridTooLarge("side " + std::to_string(side) + " exceeds the kernel limit " +
                           std::to_string(kKernelSideLimit));
    const auto base = static_cast<std::uint32_t>(spec.base.value());
    std::vector<std::uint32_t> row(static_cast<std::size_t>(side));
    const auto& k = kernels::active();
    for (std::uint64_t a = 0; a < side; ++a) {
        k.fill_row(t, base, static_cast<std::uint32_t>(a), 0, static_cast<std::uint32_t>(side),
                   row.data());
        sink(a, std::span<const std::uint32_t>{row});
    }
}

IndicatorGrid indicator(const GridSpec& spec, const PatternQuery& q, std::uint64_t dense_cap) {
    check_dense(spec, dense_cap);
    const std::uint64_t target = q.resolve(spec);
    const auto side = static_cast<std::uint32_t>(spec.side());
    const auto base = static_cast<std::uint32_t>(spec.base.value());
    IndicatorGrid grid(spec, side);
    if (target > 0xffffffffull) return grid; // beyond any cell value; empty
    const auto& k = kernels::active();
    for (std::uint32_t a = 0; a < side; ++a)
        k.match_row(q.transform, base, a, 0, side, static_cast<std::uint32_t>(target),
                    grid.row_words(a));
    return grid;
}

std::uint64_t expected_cell_count(const GridSpec& spec, const PatternQuery& q) {
    const std::uint64_t n = spec.base.value();
    std::uint64_t target = q.resolve(spec);

    const auto accumulate = [](std::uint64_t count, std::uint64_t factor) {
        const auto next = checked_mul(count, factor);
        if (!next) throw RangeOverflow("cell count exceeds 64 bits");
        return *next;
    };

    if (q.transform == TransformKind::cvt) {
        // Valid carry strings have digit 0 at position 0 and digits 0/1 at
        // positions 1..depth; anything else is a value no pair produces.
        if (target % n != 0) return 0;
        target /= n;
        std::uint64_t count = 1;
        for (std::uint32_t pos = 0; pos < spec.depth; ++pos) {
            const std::uint64_t carry = target % n;
            target /= n;
            if (carry > 1) return 0;
            count = accumulate(count, carry == 0 ? n * (n + 1) / 2 : n * (n - 1) / 2);
        }
        if (target != 0) return 0; // carry digit above the grid's top position
        return count;
    }

    // evt: per digit k_i, pairs with max == k_i number 2k_i+1; with min == k_i
    // number 2(n-1-k_i)+1.
    std::uint64_t count = 1;
    for (std::uint32_t pos = 0; pos < spec.depth; ++pos) {
        const std::uint64_t digit = target % n;
        target /= n;
        count = accumulate(count,
                           q.transform == TransformKind::evt_max ? 2 * digit + 1
                                                                 : 2 * (n - 1 - digit) + 1);
    }
    return count;
}

IndicatorGrid ifs_generator(Base base, const PatternQuery& q) {
    return indicator(GridSpec(base, 1), q);
}

IndicatorGrid iterate_generator(const IndicatorGrid& gen, std::uint32_t depth,
                                std::uint64_t dense_cap) {
    if (gen.spec().depth != 1) throw Error("generator must have depth 1");
    if (depth < 1) throw Error("iteration depth must be at least 1");
    const std::uint64_t n = gen.side();
    const GridSpec out_spec(gen.spec().base, depth);
    check_dense(out_spec, dense_cap);

    // Expand level by level: every set cell becomes a copy of the generator.
    IndicatorGrid current = gen;
    for (std::uint32_t level = 2; level <= depth; ++level) {
        const std::uint64_t cur_side = current.side();
        IndicatorGrid next(GridSpec(gen.spec().base, level), cur_side * n);
        for (std::uint64_t a = 0; a < cur_side; ++a)
            for (std::uint64_t b = 0; b < cur_side; ++b) {
                if (!current.bit(a, b)) continue;
                for (std::uint64_t i = 0; i < n; ++i)
                    for (std::uint64_t j = 0; j < n; ++j)
                        if (gen.bit(i, j)) next.set_bit(a * n + i, b * n + j);
            }
        current = std::move(next);
    }
    return current;
}

} // namespace numfrac
