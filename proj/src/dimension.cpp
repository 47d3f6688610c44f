#include <bit>
#include <cmath>
#include <numeric>

#include "numfrac/dimension.hpp"
#include "numfrac/kernels.hpp"

namespace numfrac {

const char* to_string(DimFamily f) noexcept {
    return f == DimFamily::cvt ? "cvt" : "evt";
}

double similarity_dim_cvt(Base n) {
    const double nd = static_cast<double>(n.value());
    return std::log(nd * (nd + 1.0) / 2.0) / std::log(nd);
}

double similarity_dim_evt(Base n) {
    const double nd = static_cast<double>(n.value());
    return std::log(2.0 * nd - 1.0) / std::log(nd);
}

std::vector<DimensionRecord> dimension_table(Base n_from, Base n_to, DimFamily family) {
    if (n_from.value() > n_to.value()) throw Error("empty base range");
    std::vector<DimensionRecord> rows;
    rows.reserve(n_to.value() - n_from.value() + 1);
    for (std::uint64_t n = n_from.value(); n <= n_to.value(); ++n) {
        const Base b{n};
        DimensionRecord rec{};
        rec.base = n;
        rec.scale_denominator = n;
        if (family == DimFamily::cvt) {
            rec.copies = n * (n + 1) / 2;
            rec.dimension = similarity_dim_cvt(b);
        } else {
            rec.copies = 2 * n - 1;
            rec.dimension = similarity_dim_evt(b);
        }
        rows.push_back(rec);
    }
    return rows;
}

namespace {

// Plain square bit matrix for the coarsening ladder.
struct OccupancyGrid {
    std::uint64_t side;
    std::uint64_t stride;
    std::vector<std::uint64_t> words;

    explicit OccupancyGrid(std::uint64_t s)
        : side(s), stride((s + 63) / 64), words(s * stride, 0) {}

    bool bit(std::uint64_t a, std::uint64_t b) const {
        return (words[a * stride + (b >> 6)] >> (b & 63)) & 1;
    }
    void set_bit(std::uint64_t a, std::uint64_t b) {
        words[a * stride + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    }
    std::uint64_t popcount() const {
        std::uint64_t total = 0;
        for (std::uint64_t w : words) total += static_cast<std::uint64_t>(std::popcount(w));
        return total;
    }
};

// out(a,b) = any bit set in the factor x factor block of `in` at (a,b).
OccupancyGrid coarsen(const OccupancyGrid& in, std::uint64_t factor) {
    OccupancyGrid out(in.side / factor);
    for (std::uint64_t a = 0; a < out.side; ++a)
        for (std::uint64_t b = 0; b < out.side; ++b) {
            bool occupied = false;
            for (std::uint64_t i = 0; i < factor && !occupied; ++i)
                for (std::uint64_t j = 0; j < factor; ++j)
                    if (in.bit(a * factor + i, b * factor + j)) {
                        occupied = true;
                        break;
                    }
            if (occupied) out.set_bit(a, b);
        }
    return out;
}

} // namespace

BoxCountFit box_count(const IndicatorGrid& grid) {
    const std::uint64_t base = grid.spec().base.value();
    const std::uint32_t depth = grid.spec().depth;
    if (depth < 2) throw Error("box counting needs depth >= 2");
    if (grid.popcount() == 0) throw DegenerateGrid("no set bits to count");

    OccupancyGrid current(grid.side());
    for (std::uint64_t a = 0; a < grid.side(); ++a)
        for (std::uint64_t w = 0; w < grid.words_per_row(); ++w)
            current.words[a * current.stride + w] = grid.row_words(a)[w];

    BoxCountFit fit;
    std::uint64_t box_side = 1;
    for (std::uint32_t j = 0; j <= depth; ++j) {
        fit.scales.push_back(box_side);
        fit.counts.push_back(current.popcount());
        if (j < depth) {
            current = coarsen(current, base);
            box_side *= base;
        }
    }

    // OLS of log(count) against log(side / box_side), all scales included.
    const std::size_t m = fit.scales.size();
    std::vector<double> xs(m), ys(m);
    const double side = static_cast<double>(grid.side());
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = std::log(side / static_cast<double>(fit.scales[i]));
        ys[i] = std::log(static_cast<double>(fit.counts[i]));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(m);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ss_res += e * e;
        }
        fit.r2 = 1.0 - ss_res / syy;
    } else {
        fit.r2 = 1.0; // constant counts: the flat fit is exact
    }
    return fit;
}

ConvergenceReport verify_convergence(DimFamily family, std::uint64_t n_max) {
    if (n_max < 3) throw Error("n_max must be at least 3");
    const bool increasing = family == DimFamily::cvt;
    const auto eval = [increasing](std::uint64_t n) {
        return increasing ? similarity_dim_cvt(Base{n}) : similarity_dim_evt(Base{n});
    };
    double previous = eval(2);
    bool monotone = true;
    for (std::uint64_t n = 3; n <= n_max; ++n) {
        const double value = eval(n);
        if (increasing ? value <= previous : value >= previous) {
            monotone = false;
            break;
        }
        previous = value;
    }
    ConvergenceReport report{};
    report.family = family;
    report.n_max = n_max;
    report.monotone = monotone;
    report.final_value = eval(n_max);
    report.limit = increasing ? 2.0 : 1.0;
    report.final_gap = std::abs(report.final_value - report.limit);
    return report;
}

IndicatorGrid overlay_overflow_mask(Base pasted_base, Base canvas_base, std::uint64_t render_side,
                                    std::uint64_t dense_cap) {
    if (pasted_base.value() == canvas_base.value())
        throw Error("overlay needs two distinct bases");
    const std::uint64_t lcm = std::lcm(pasted_base.value(), canvas_base.value());
    std::uint32_t depth = 0;
    std::uint64_t s = render_side;
    while (s > 1 && s % lcm == 0) {
        s /= lcm;
        ++depth;
    }
    if (s != 1 || depth < 2)
        throw Error("render side must be a power of lcm(" + std::to_string(pasted_base.value()) +
                    "," + std::to_string(canvas_base.value()) + ") and at least its square");
    if (render_side > dense_cap)
        throw GridTooLarge("render side " + std::to_string(render_side) + " exceeds dense cap " +
                           std::to_string(dense_cap));
    if (render_side > kKernelSideLimit)
        throw GridTooLarge("render side exceeds the kernel limit");

    const GridSpec mask_spec(Base{lcm}, depth);
    IndicatorGrid mask(mask_spec, render_side);
    const auto side32 = static_cast<std::uint32_t>(render_side);
    const auto& k = kernels::active();
    std::vector<std::uint64_t> covered(mask.words_per_row());
    for (std::uint32_t a = 0; a < side32; ++a) {
        std::uint64_t* row = mask.row_words(a);
        k.match_row(TransformKind::cvt, static_cast<std::uint32_t>(pasted_base.value()), a, 0,
                    side32, 0, row);
        k.match_row(TransformKind::cvt, static_cast<std::uint32_t>(canvas_base.value()), a, 0,
                    side32, 0, covered.data());
        for (std::uint64_t w = 0; w < mask.words_per_row(); ++w) row[w] &= ~covered[w];
    }
    return mask;
}

BoxCountFit increment_analysis(Base n, std::uint64_t render_side, std::uint64_t dense_cap) {
    if (n.value() < 3) throw Error("increment analysis needs a base of at least 3");
    const std::uint64_t lcm = std::lcm(n.value() - 1, n.value());
    if (render_side == 0) {
        auto def = checked_pow(lcm, 3);
        if (!def) throw RangeOverflow("default render side exceeds 64 bits");
        render_side = *def;
    }
    const IndicatorGrid mask = overlay_overflow_mask(Base{n.value() - 1}, n, render_side, dense_cap);
    return box_count(mask);
}

} // namespace numfrac
