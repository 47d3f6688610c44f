#include "doctest.h"

#include "numfrac/digitcore.hpp"
#include "numfrac/gridgen.hpp"
#include "test_util.hpp"

#include <array>
#include <set>
#include <vector>

using namespace numfrac;

namespace {

// Brute-force oracle for indicator membership, built on the exact 64-bit path
// rather than the row kernels.
std::uint64_t brute_count(const GridSpec& spec, const PatternQuery& q) {
    const std::uint64_t target = q.resolve(spec);
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < spec.side(); ++a)
        for (std::uint64_t b = 0; b < spec.side(); ++b)
            count += apply_transform(q.transform, a, b, spec.base) == target;
    return count;
}

} // namespace

TEST_CASE("published 16x16 binary evt table reproduced cell for cell") {
    // The full printed table over [0,16)^2; row a downward, column b rightward.
    const std::array<std::array<std::uint32_t, 16>, 16> printed = {{
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
        {1, 1, 3, 3, 5, 5, 7, 7, 9, 9, 11, 11, 13, 13, 15, 15},
        {2, 3, 2, 3, 6, 7, 6, 7, 10, 11, 10, 11, 14, 15, 14, 15},
        {3, 3, 3, 3, 7, 7, 7, 7, 11, 11, 11, 11, 15, 15, 15, 15},
        {4, 5, 6, 7, 4, 5, 6, 7, 12, 13, 14, 15, 12, 13, 14, 15},
        {5, 5, 7, 7, 5, 5, 7, 7, 13, 13, 15, 15, 13, 13, 15, 15},
        {6, 7, 6, 7, 6, 7, 6, 7, 14, 15, 14, 15, 14, 15, 14, 15},
        {7, 7, 7, 7, 7, 7, 7, 7, 15, 15, 15, 15, 15, 15, 15, 15},
        {8, 9, 10, 11, 12, 13, 14, 15, 8, 9, 10, 11, 12, 13, 14, 15},
        {9, 9, 11, 11, 13, 13, 15, 15, 9, 9, 11, 11, 13, 13, 15, 15},
        {10, 11, 10, 11, 14, 15, 14, 15, 10, 11, 10, 11, 14, 15, 14, 15},
        {11, 11, 11, 11, 15, 15, 15, 15, 11, 11, 11, 11, 15, 15, 15, 15},
        {12, 13, 14, 15, 12, 13, 14, 15, 12, 13, 14, 15, 12, 13, 14, 15},
        {13, 13, 15, 15, 13, 13, 15, 15, 13, 13, 15, 15, 13, 13, 15, 15},
        {14, 15, 14, 15, 14, 15, 14, 15, 14, 15, 14, 15, 14, 15, 14, 15},
        {15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15},
    }};
    const ValueTable table = build_table(GridSpec(Base{2}, 4), TransformKind::evt_max);
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b)
            REQUIRE(table.cell(a, b) == printed[a][b]);
}

TEST_CASE("published ternary evt table spot values") {
    // Hand-checked entries of the printed 18x18 ternary table.
    const ValueTable table = build_table(GridSpec(Base{3}, 2), TransformKind::evt_max);
    CHECK(table.cell(1, 3) == 4);
    CHECK(table.cell(2, 4) == 5);
    CHECK(table.cell(4, 7) == 7);
    CHECK(table.cell(8, 8) == 8);
    // Entries beyond the 9x9 block, straight from the digit arithmetic.
    CHECK(evt_max(10, 5, Base{3}) == 14);
    CHECK(evt_max(15, 16, Base{3}) == 16);
    CHECK(evt_max(8, 9, Base{3}) == 17);
    CHECK(evt_max(3, 9, Base{3}) == 12);
}

TEST_CASE("build_table basics") {
    const ValueTable evt = build_table(GridSpec(Base{2}, 2), TransformKind::evt_max);
    CHECK(evt.cell(3, 0) == 3);
    CHECK(evt.cell(3, 3) == 3);
    CHECK(evt.cell(2, 1) == 3);
    const ValueTable cvt_t = build_table(GridSpec(Base{2}, 2), TransformKind::cvt);
    for (std::uint64_t a = 0; a < 4; ++a) CHECK(cvt_t.cell(a, 0) == 0);
}

TEST_CASE("table symmetry, diagonal and row-0 laws") {
    for (std::uint64_t n : {2ull, 3ull, 5ull}) {
        const GridSpec spec(Base{n}, n == 2 ? 5u : 3u);
        for (TransformKind t : {TransformKind::cvt, TransformKind::evt_max, TransformKind::evt_min}) {
            const ValueTable table = build_table(spec, t);
            for (std::uint64_t a = 0; a < table.side(); ++a)
                for (std::uint64_t b = 0; b < a; ++b)
                    REQUIRE(table.cell(a, b) == table.cell(b, a));
        }
        const ValueTable evt = build_table(spec, TransformKind::evt_max);
        for (std::uint64_t i = 0; i < evt.side(); ++i) {
            CHECK(evt.cell(0, i) == i); // first row is the identity sequence
            CHECK(evt.cell(i, i) == i);
        }
    }
    const ValueTable c2 = build_table(GridSpec(Base{2}, 6), TransformKind::cvt);
    for (std::uint64_t a = 0; a < c2.side(); ++a) CHECK(c2.cell(a, a) == 2 * a);
}

TEST_CASE("indicator worked examples") {
    const IndicatorGrid zero22 =
        indicator(GridSpec(Base{2}, 2), PatternQuery::zero(TransformKind::cvt));
    CHECK(zero22.popcount() == 9);
    CHECK(zero22.popcount() == brute_count(GridSpec(Base{2}, 2), PatternQuery::zero(TransformKind::cvt)));

    const IndicatorGrid top22 =
        indicator(GridSpec(Base{2}, 2), PatternQuery::top(TransformKind::evt_max));
    CHECK(top22.popcount() == 9);
    const std::set<std::pair<std::uint64_t, std::uint64_t>> expected = {
        {0, 3}, {1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 0}, {3, 1}, {3, 2}, {3, 3}};
    for (std::uint64_t a = 0; a < 4; ++a)
        for (std::uint64_t b = 0; b < 4; ++b)
            CHECK(top22.bit(a, b) == (expected.count({a, b}) == 1));

    for (std::uint64_t n = 2; n <= 9; ++n) {
        const IndicatorGrid g = indicator(GridSpec(Base{n}, 1), PatternQuery::zero(TransformKind::cvt));
        CHECK(g.popcount() == n * (n + 1) / 2);
    }
}

TEST_CASE("expected_cell_count worked examples") {
    CHECK(expected_cell_count(GridSpec(Base{3}, 1), PatternQuery::zero(TransformKind::cvt)) == 6);
    for (std::uint64_t n = 2; n <= 9; ++n)
        CHECK(expected_cell_count(GridSpec(Base{n}, 1), PatternQuery::top(TransformKind::evt_max)) ==
              2 * n - 1);
    CHECK(expected_cell_count(GridSpec(Base{2}, 3), PatternQuery::zero(TransformKind::cvt)) == 27);
    CHECK(brute_count(GridSpec(Base{2}, 3), PatternQuery::zero(TransformKind::cvt)) == 27);
}

TEST_CASE("count law: popcount equals the closed form") {
    auto rng = test::make_rng(20);
    for (std::uint64_t n = 2; n <= 8; ++n) {
        for (std::uint32_t depth = 1; depth <= 3; ++depth) {
            const GridSpec spec(Base{n}, depth);

            // cvt: zero plus randomly drawn carry strings (digit 0 at position
            // 0, digits 0/1 above).
            std::vector<PatternQuery> queries{PatternQuery::zero(TransformKind::cvt)};
            for (int i = 0; i < 3; ++i) {
                std::uint64_t k = 0;
                std::uint64_t place = n;
                for (std::uint32_t pos = 0; pos < depth; ++pos) {
                    k += test::uniform(rng, 1) * place;
                    place *= n;
                }
                queries.push_back(PatternQuery::value(TransformKind::cvt, k));
            }
            // an invalid carry pattern: nonzero digit at position 0
            queries.push_back(PatternQuery::value(TransformKind::cvt, 1));

            // evt targets
            queries.push_back(PatternQuery::top(TransformKind::evt_max));
            queries.push_back(PatternQuery::value(TransformKind::evt_max,
                                                  test::uniform(rng, spec.side() - 1)));
            queries.push_back(PatternQuery::value(TransformKind::evt_min,
                                                  test::uniform(rng, spec.side() - 1)));
            queries.push_back(PatternQuery::value(TransformKind::evt_min, 0));

            for (const auto& q : queries) {
                const std::uint64_t expected = expected_cell_count(spec, q);
                CHECK(indicator(spec, q).popcount() == expected);
                if (spec.side() <= 128) CHECK(brute_count(spec, q) == expected);
            }
        }
    }
}

TEST_CASE("cvt indicator with a digit >= 2 in the carry string is empty") {
    const GridSpec spec(Base{3}, 2);
    const auto q = PatternQuery::value(TransformKind::cvt, 2 * 3); // carry digit 2
    CHECK(expected_cell_count(spec, q) == 0);
    CHECK(indicator(spec, q).popcount() == 0);
}

TEST_CASE("ifs_generator worked examples") {
    const IndicatorGrid bin = ifs_generator(Base{2}, PatternQuery::zero(TransformKind::cvt));
    CHECK(bin.popcount() == 3);
    CHECK(bin.bit(0, 0));
    CHECK(bin.bit(0, 1));
    CHECK(bin.bit(1, 0));
    CHECK(!bin.bit(1, 1));

    CHECK(ifs_generator(Base{3}, PatternQuery::zero(TransformKind::cvt)).popcount() == 6);

    const IndicatorGrid evt = ifs_generator(Base{2}, PatternQuery::top(TransformKind::evt_max));
    CHECK(evt.popcount() == 3);
    CHECK(!evt.bit(0, 0));
    CHECK(evt.bit(0, 1));
    CHECK(evt.bit(1, 0));
    CHECK(evt.bit(1, 1));
}

TEST_CASE("iterate_generator worked examples") {
    const IndicatorGrid gen = ifs_generator(Base{2}, PatternQuery::zero(TransformKind::cvt));
    CHECK(iterate_generator(gen, 1) == gen);
    CHECK(iterate_generator(gen, 2) ==
          indicator(GridSpec(Base{2}, 2), PatternQuery::zero(TransformKind::cvt)));

    const IndicatorGrid tern_top = ifs_generator(Base{3}, PatternQuery::top(TransformKind::evt_max));
    CHECK(iterate_generator(tern_top, 3).popcount() == 125);
}

TEST_CASE("substitution equivalence for the canonical patterns") {
    const std::vector<PatternQuery> queries = {
        PatternQuery::zero(TransformKind::cvt),
        PatternQuery::top(TransformKind::evt_max),
        PatternQuery::value(TransformKind::evt_min, 0),
    };
    for (std::uint64_t n = 2; n <= 5; ++n) {
        for (const auto& q : queries) {
            const IndicatorGrid gen = ifs_generator(Base{n}, q);
            for (std::uint32_t depth = 1; depth <= 4; ++depth) {
                const IndicatorGrid direct = indicator(GridSpec(Base{n}, depth), q);
                REQUIRE(iterate_generator(gen, depth) == direct);
            }
        }
    }
}

TEST_CASE("streaming rows equal the dense table") {
    const GridSpec spec(Base{3}, 3);
    const ValueTable dense = build_table(spec, TransformKind::evt_min);
    std::uint64_t rows_seen = 0;
    stream_table_rows(spec, TransformKind::evt_min,
                      [&](std::uint64_t a, std::span<const std::uint32_t> row) {
                          REQUIRE(row.size() == dense.side());
                          for (std::uint64_t b = 0; b < row.size(); ++b)
                              REQUIRE(row[b] == dense.cell(a, b));
                          ++rows_seen;
                      });
    CHECK(rows_seen == dense.side());
}

TEST_CASE("grid size guards") {
    CHECK_THROWS_AS(build_table(GridSpec(Base{3}, 9), TransformKind::cvt), GridTooLarge);
    CHECK_THROWS_AS(indicator(GridSpec(Base{2}, 15), PatternQuery::zero(TransformKind::cvt)),
                    GridTooLarge);
    // a tighter explicit cap
    CHECK_THROWS_AS(build_table(GridSpec(Base{3}, 2), TransformKind::cvt, 8), GridTooLarge);
    CHECK_NOTHROW(build_table(GridSpec(Base{3}, 2), TransformKind::cvt, 9));
    // the kernel ceiling holds even with a huge cap
    CHECK_THROWS_AS(build_table(GridSpec(Base{2}, 17), TransformKind::cvt, 1ull << 40),
                    GridTooLarge);
    CHECK_THROWS_AS(GridSpec(Base{2}, 64), RangeOverflow);
}

TEST_CASE("invalid targets") {
    const GridSpec spec(Base{2}, 2);
    CHECK_THROWS_AS(indicator(spec, PatternQuery::value(TransformKind::evt_max, 4)), InvalidTarget);
    CHECK_THROWS_AS(indicator(spec, PatternQuery::value(TransformKind::cvt, 8)), InvalidTarget);
    CHECK_NOTHROW(indicator(spec, PatternQuery::value(TransformKind::cvt, 7)));
    CHECK_NOTHROW(indicator(spec, PatternQuery::value(TransformKind::evt_max, 3)));
}
