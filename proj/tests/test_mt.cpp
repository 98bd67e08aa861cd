#include "doctest.h"

#include "ipr/error.hpp"
#include "ipr/mt.hpp"

#include <random>

using namespace ipr;

namespace {

std::vector<Rational> rats(std::initializer_list<long> vals) {
    std::vector<Rational> out;
    for (long v : vals) out.emplace_back(v);
    return out;
}

}  // namespace

TEST_CASE("finite sums of 1,2,4") {
    auto res = mt_enumerate(CompressedTuple(rats({1})), TermSequence(rats({1, 2, 4})));
    CHECK(res.values == rats({1, 2, 3, 4, 5, 6, 7}));
    CHECK(res.multiplicity == 7);
}

TEST_CASE("MT of <1,2> over 1,4,16") {
    auto res = mt_enumerate(CompressedTuple(rats({1, 2})), TermSequence(rats({1, 4, 16})));
    CHECK(res.values == rats({9, 33, 36, 37, 41}));
    CHECK(res.multiplicity == 5);
}

TEST_CASE("tuple longer than the sequence") {
    CHECK_THROWS_AS(mt_enumerate(CompressedTuple(rats({1, 2})), TermSequence(rats({1}))), Error);
    try {
        mt_enumerate(CompressedTuple(rats({1, 2})), TermSequence(rats({1})));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::TupleTooLong);
    }
}

TEST_CASE("FS multiplicity is 2^n - 1") {
    CompressedTuple fs(rats({1}));
    for (int n = 1; n <= 10; ++n) {
        std::vector<Rational> terms;
        for (int i = 0; i < n; ++i) terms.emplace_back(i + 1);
        auto res = mt_enumerate(fs, TermSequence(terms));
        CHECK(res.multiplicity == (1ull << n) - 1);
    }
}

TEST_CASE("pair-tuple multiplicity formula") {
    // sum_{m=1}^{n-1} 2^(m-1) (2^(n-m) - 1)
    CompressedTuple pair(rats({1, 2}));
    for (int n = 2; n <= 10; ++n) {
        std::vector<Rational> terms;
        for (int i = 0; i < n; ++i) terms.emplace_back(i + 1);
        auto res = mt_enumerate(pair, TermSequence(terms));
        unsigned long long expected = 0;
        for (int m = 1; m <= n - 1; ++m)
            expected += (1ull << (m - 1)) * ((1ull << (n - m)) - 1);
        CHECK(res.multiplicity == expected);
    }
}

TEST_CASE("scaling equivariance") {
    CompressedTuple pair(rats({1, 2}));
    TermSequence x(rats({1, 4, 16}));
    Rational lambda(3, 7);
    std::vector<Rational> scaled;
    for (const auto& t : x.terms) scaled.push_back(t * lambda);
    auto base = mt_enumerate(pair, x);
    auto shifted = mt_enumerate(pair, TermSequence(scaled));
    REQUIRE(base.values.size() == shifted.values.size());
    for (size_t i = 0; i < base.values.size(); ++i)
        CHECK(shifted.values[i] == base.values[i] * lambda);
    CHECK(base.multiplicity == shifted.multiplicity);
}

TEST_CASE("the two strategies agree") {
    std::mt19937 rng(11);
    std::vector<CompressedTuple> tuples;
    tuples.emplace_back(rats({1}));
    tuples.emplace_back(rats({1, 2}));
    tuples.emplace_back(rats({2, 1, 3}));
    for (const auto& tuple : tuples) {
        for (int trial = 0; trial < 20; ++trial) {
            size_t n = tuple.size() + rng() % 5;
            std::vector<Rational> terms;
            for (size_t i = 0; i < n; ++i)
                terms.emplace_back(1 + static_cast<long>(rng() % 40), 1 + static_cast<long>(rng() % 8));
            auto a = mt_enumerate(tuple, TermSequence(terms));
            auto b = mt_enumerate_labelings(tuple, TermSequence(terms));
            CHECK(a.values == b.values);
            CHECK(a.multiplicity == b.multiplicity);
        }
    }
}

TEST_CASE("matrix image equals the enumeration") {
    CompressedTuple pair(rats({1, 2}));
    SparseMatrix m = build_family("mt", 4, pair.entries);
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> x;
        for (int i = 0; i < 4; ++i) x.emplace_back(1 + static_cast<long>(rng() % 30));
        auto image = m.apply(x);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        auto enumd = mt_enumerate(pair, TermSequence(x));
        CHECK(image == enumd.values);
    }
}
