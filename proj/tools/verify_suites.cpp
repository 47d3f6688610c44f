#include "verify_suites.hpp"

#include <cmath>
#include <random>

#include "numfrac/digitcore.hpp"
#include "numfrac/dimension.hpp"
#include "numfrac/gridgen.hpp"

namespace numfrac::verify {

namespace {

bool wants(const Options& o, const char* suite) {
    return o.suite == "all" || o.suite == suite;
}

void check_identities(const Options& o, std::vector<CheckResult>& out) {
    std::uint64_t failures = 0;
    std::uint64_t checked = 0;

    for (std::uint64_t n = 2; n <= 8; ++n) {
        const Base base{n};
        const std::uint64_t cube = n * n * n;
        for (std::uint64_t a = 0; a < cube; ++a)
            for (std::uint64_t b = 0; b < cube; ++b) {
                std::uint64_t carry = cvt(a, b, base);
                if (o.inject_fault && a == 1 && b == 1) carry += 1;
                failures += carry + sv(a, b, base) != a + b;
                failures += evt_max(a, b, base) + evt_min(a, b, base) != a + b;
                checked += 2;
            }

        std::mt19937_64 rng(o.seed ^ n);
        std::uint64_t hi = 1;
        for (int i = 0; i < 10; ++i) hi *= n;
        std::uniform_int_distribution<std::uint64_t> dist(0, hi - 1);
        for (int i = 0; i < 100000; ++i) {
            const std::uint64_t a = dist(rng);
            const std::uint64_t b = dist(rng);
            failures += cvt(a, b, base) + sv(a, b, base) != a + b;
            failures += evt_max(a, b, base) + evt_min(a, b, base) != a + b;
            failures += cvt(a, b, base) % n != 0;
            failures += cvt(a, b, base) != cvt(b, a, base);
            failures += evt_max(a, b, base) != evt_max(b, a, base);
            checked += 5;
        }
    }

    // base-2 bitwise specialization
    std::mt19937_64 rng(o.seed ^ 0xb2);
    std::uniform_int_distribution<std::uint64_t> dist(0, (1ull << 50) - 1);
    for (int i = 0; i < 100000; ++i) {
        const std::uint64_t a = dist(rng);
        const std::uint64_t b = dist(rng);
        failures += cvt(a, b, Base{2}) != (a & b) << 1;
        failures += sv(a, b, Base{2}) != (a ^ b);
        failures += evt_max(a, b, Base{2}) != (a | b);
        failures += evt_min(a, b, Base{2}) != (a & b);
        checked += 4;
    }

    out.push_back({"identities",
                   failures == 0,
                   {{"bases", "2..8"},
                    {"exhaustive_below", "n^3"},
                    {"random_pairs_per_base", 100000},
                    {"random_range", "n^10"},
                    {"seed", o.seed},
                    {"checked", checked},
                    {"failures", failures}}});
}

void check_substitution(std::vector<CheckResult>& out) {
    std::uint64_t mismatched_grids = 0;
    std::uint64_t compared = 0;
    const std::vector<PatternQuery> queries = {
        PatternQuery::zero(TransformKind::cvt),
        PatternQuery::top(TransformKind::evt_max),
        PatternQuery::value(TransformKind::evt_min, 0),
    };
    for (std::uint64_t n = 2; n <= 5; ++n)
        for (const auto& q : queries) {
            const IndicatorGrid gen = ifs_generator(Base{n}, q);
            for (std::uint32_t depth = 1; depth <= 4; ++depth) {
                const bool equal =
                    iterate_generator(gen, depth) == indicator(GridSpec(Base{n}, depth), q);
                mismatched_grids += !equal;
                ++compared;
            }
        }
    out.push_back({"substitution_equivalence",
                   mismatched_grids == 0,
                   {{"bases", "2..5"},
                    {"depths", "1..4"},
                    {"grids_compared", compared},
                    {"mismatched", mismatched_grids}}});
}

void check_counts(std::vector<CheckResult>& out) {
    std::uint64_t failures = 0;
    std::uint64_t checked = 0;
    for (std::uint64_t n = 2; n <= 8; ++n)
        for (std::uint32_t depth = 1; depth <= 3; ++depth) {
            const GridSpec spec(Base{n}, depth);
            const auto queries = {PatternQuery::zero(TransformKind::cvt),
                                  PatternQuery::top(TransformKind::evt_max)};
            for (const auto& q : queries) {
                const std::uint64_t closed = expected_cell_count(spec, q);
                failures += indicator(spec, q).popcount() != closed;
                // brute-force double loop over the exact arithmetic
                std::uint64_t brute = 0;
                const std::uint64_t target = q.resolve(spec);
                for (std::uint64_t a = 0; a < spec.side(); ++a)
                    for (std::uint64_t b = 0; b < spec.side(); ++b)
                        brute += apply_transform(q.transform, a, b, spec.base) == target;
                failures += brute != closed;
                checked += 2;
            }
        }
    out.push_back({"count_laws",
                   failures == 0,
                   {{"bases", "2..8"}, {"depths", "1..3"}, {"checked", checked}, {"failures", failures}}});
}

void check_convergence(const Options& o, std::vector<CheckResult>& out) {
    const ConvergenceReport c = verify_convergence(DimFamily::cvt, o.n_max);
    out.push_back({"convergence_cvt",
                   c.monotone && c.final_value < c.limit,
                   {{"n_max", c.n_max},
                    {"monotone_increasing", c.monotone},
                    {"final_value", c.final_value},
                    {"limit", c.limit},
                    {"final_gap", c.final_gap}}});
    const ConvergenceReport e = verify_convergence(DimFamily::evt, o.n_max);
    out.push_back({"convergence_evt",
                   e.monotone && e.final_value > e.limit,
                   {{"n_max", e.n_max},
                    {"monotone_decreasing", e.monotone},
                    {"final_value", e.final_value},
                    {"limit", e.limit},
                    {"final_gap", e.final_gap}}});
}

void check_boxcount(std::vector<CheckResult>& out) {
    std::uint64_t failures = 0;
    nlohmann::json agreements = nlohmann::json::array();
    for (std::uint64_t n = 2; n <= 5; ++n) {
        const GridSpec spec(Base{n}, 4);
        const double cvt_slope =
            box_count(indicator(spec, PatternQuery::zero(TransformKind::cvt))).slope;
        const double evt_slope =
            box_count(indicator(spec, PatternQuery::top(TransformKind::evt_max))).slope;
        const double cvt_err = std::abs(cvt_slope - similarity_dim_cvt(Base{n}));
        const double evt_err = std::abs(evt_slope - similarity_dim_evt(Base{n}));
        failures += cvt_err > 0.02;
        failures += evt_err > 0.02;
        agreements.push_back({{"base", n}, {"cvt_error", cvt_err}, {"evt_error", evt_err}});
    }
    const BoxCountFit deep =
        box_count(indicator(GridSpec(Base{2}, 8), PatternQuery::zero(TransformKind::cvt)));
    const double sierpinski = std::log(3.0) / std::log(2.0);
    failures += std::abs(deep.slope - sierpinski) > 0.01;
    failures += deep.r2 <= 0.999;
    out.push_back({"boxcount_oracle",
                   failures == 0,
                   {{"formula_agreement", agreements},
                    {"binary_depth8_slope", deep.slope},
                    {"binary_depth8_r2", deep.r2},
                    {"failures", failures}}});
}

} // namespace

std::vector<CheckResult> run(const Options& options) {
    std::vector<CheckResult> results;
    if (wants(options, "identities")) check_identities(options, results);
    if (wants(options, "substitution")) check_substitution(results);
    if (wants(options, "counts")) check_counts(results);
    if (wants(options, "convergence")) check_convergence(options, results);
    if (wants(options, "boxcount")) check_boxcount(results);
    return results;
}

} // namespace numfrac::verify
