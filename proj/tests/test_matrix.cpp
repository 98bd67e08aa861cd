#include "doctest.h"

#include "ipr/error.hpp"
#include "ipr/matrix.hpp"

#include <random>
#include <set>

using namespace ipr;

namespace {

std::set<SparseMatrix::Row> row_set(const SparseMatrix& m) {
    std::set<SparseMatrix::Row> s;
    for (int i = 0; i < m.rows(); ++i) s.insert(m.row(i));
    return s;
}

// independent count of block pairs F_1 < F_2 over n indices
long count_block_pairs(int n) {
    long count = 0;
    for (unsigned f1 = 1; f1 < (1u << n); ++f1) {
        for (unsigned f2 = 1; f2 < (1u << n); ++f2) {
            int max1 = 31 - __builtin_clz(f1);
            int min2 = __builtin_ctz(f2);
            if (max1 < min2) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("fs family") {
    SparseMatrix m = build_family("fs", 3);
    CHECK(m.rows() == 7);
    CHECK(m.cols() == 3);
    std::set<SparseMatrix::Row> expected;
    for (unsigned mask = 1; mask < 8; ++mask) {
        SparseMatrix::Row row;
        for (int j = 0; j < 3; ++j) {
            if (mask & (1u << j)) row.emplace_back(j, Rational(1));
        }
        expected.insert(row);
    }
    CHECK(row_set(m) == expected);
}

TEST_CASE("schur is the fixed specimen") {
    SparseMatrix m = build_family("schur", 2);
    REQUIRE(m.rows() == 3);
    CHECK(m.entry(0, 0) == 1);
    CHECK(m.entry(1, 1) == 1);
    CHECK(m.entry(2, 0) == 1);
    CHECK(m.entry(2, 1) == 1);
    CHECK_THROWS_AS(build_family("schur", 3), Error);
}

TEST_CASE("ex16 matches the display") {
    SparseMatrix m = build_family("ex16", 4);
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 4);
    CHECK(m.entry(0, 0) == 1);
    CHECK(m.entry(1, 0) == 2);
    CHECK(m.entry(2, 0) == 4);
    CHECK(m.entry(3, 0) == 8);
    for (int k = 1; k < 4; ++k) {
        CHECK(m.entry(k, k) == 1);
        CHECK(m.row(k).size() == 2);
    }
    CHECK(m.row(0).size() == 1);
}

TEST_CASE("ex17 matches the display") {
    SparseMatrix m = build_family("ex17", 3);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 4);
    CHECK(m.entry(0, 0) == 1);
    CHECK(m.entry(0, 1) == -1);
    CHECK(m.entry(1, 0) == Rational(1, 3));
    CHECK(m.entry(1, 2) == -1);
    CHECK(m.entry(2, 0) == Rational(1, 5));
    CHECK(m.entry(2, 3) == -1);
}

TEST_CASE("mt family row count against the brute-force oracle") {
    std::vector<Rational> tuple{Rational(1), Rational(2)};
    SparseMatrix m = build_family("mt", 3, tuple);
    CHECK(m.rows() == 5);
    CHECK(m.rows() == count_block_pairs(3));
    SparseMatrix m4 = build_family("mt", 4, tuple);
    CHECK(m4.rows() == count_block_pairs(4));
}

TEST_CASE("unknown family and caps") {
    CHECK_THROWS_AS(build_family("nope", 3), Error);
    try {
        build_family("fs", 25);
        FAIL("expected SizeTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SizeTooLarge);
    }
}

TEST_CASE("compress") {
    auto c1 = compress({Rational(1), Rational(1), Rational(1)});
    CHECK(c1.entries == std::vector<Rational>{Rational(1)});
    auto c2 = compress({Rational(2), Rational(2), Rational(0), Rational(1), Rational(1), Rational(3)});
    CHECK(c2.entries == std::vector<Rational>{Rational(2), Rational(1), Rational(3)});
    auto c3 = compress({Rational(1), Rational(2)});
    CHECK(c3.entries == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK_THROWS_AS(compress({Rational(0), Rational(0)}), Error);
    // idempotent on a little random soup
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rational> row;
        int len = 1 + static_cast<int>(rng() % 8);
        bool nonzero = false;
        for (int i = 0; i < len; ++i) {
            int v = static_cast<int>(rng() % 4) - 1;
            row.emplace_back(v);
            nonzero = nonzero || v != 0;
        }
        if (!nonzero) row.emplace_back(1);
        auto once = compress(row);
        auto twice = compress(once.entries);
        CHECK(once.entries == twice.entries);
    }
}

TEST_CASE("classify") {
    auto schur = classify_matrix(build_family("schur", 2));
    CHECK(schur.first_entries);
    CHECK(schur.monic);

    auto fs3 = classify_matrix(build_family("fs", 3));
    CHECK(fs3.first_entries);
    CHECK(fs3.monic);

    auto ex16 = classify_matrix(build_family("ex16", 4), std::vector<int>{0, 4});
    CHECK_FALSE(ex16.first_entries);  // leading entries 1,2,4,8 share column 0

    CHECK_THROWS_AS(classify_matrix(build_family("ex16", 4)), Error);  // MissingBreakpoints
}

TEST_CASE("classify segmented blocks") {
    // diag(schur, schur) cut at column 2 has two first-entries blocks
    SparseMatrix d = diagonal_sum(build_family("schur", 2), build_family("schur", 2));
    auto rep = classify_matrix(d, std::vector<int>{0, 2, 4});
    REQUIRE(rep.segmented.has_value());
    CHECK(rep.segmented->structure_valid);
    CHECK(rep.segmented->first_entries_all);
    CHECK(rep.segmented->monic_all);
    CHECK(rep.segmented->blocks.size() == 2);

    auto bad = classify_matrix(build_family("ex16", 4), std::vector<int>{0, 4});
    REQUIRE(bad.segmented.has_value());
    CHECK(bad.segmented->structure_valid);
    CHECK_FALSE(bad.segmented->first_entries_all);  // 1,2,4,8 collide in column 0
}

TEST_CASE("diagonal_sum shapes") {
    SparseMatrix one = SparseMatrix::from_dense({{Rational(1)}});
    SparseMatrix d = diagonal_sum(one, one);
    CHECK(d.rows() == 2);
    CHECK(d.cols() == 2);
    CHECK(d.entry(0, 0) == 1);
    CHECK(d.entry(1, 1) == 1);
    CHECK(d.entry(0, 1) == 0);

    SparseMatrix d2 = diagonal_sum(build_family("fs", 2), build_family("schur", 2));
    CHECK(d2.rows() == 6);
    CHECK(d2.cols() == 4);

    SparseMatrix d3 = diagonal_sum(build_family("fs", 3),
                                   build_family("mt", 3, {Rational(1), Rational(2)}));
    CHECK(d3.rows() == 12);
    CHECK(d3.cols() == 6);
}

TEST_CASE("segmented spec round trips through prefixes") {
    auto spec = SegmentedSpec::from_diagonal_blocks(
        {build_family("schur", 2), build_family("fs", 2)});
    CHECK(spec.block_count() == 2);
    CHECK(spec.row_count() == 6);
    CHECK(spec.breakpoints == std::vector<int>{0, 2, 4});
    SparseMatrix b1 = spec.prefix(1);
    CHECK(b1 == diagonal_sum(build_family("schur", 2), build_family("fs", 2)));

    SparseMatrix wide = build_family("fs", 4);
    auto spec2 = SegmentedSpec::from_matrix(wide, {0, 2, 4});
    CHECK(spec2.block_count() == 2);
    CHECK(spec2.prefix(1) == wide);
}
