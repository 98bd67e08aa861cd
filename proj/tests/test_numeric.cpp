#include "doctest.h"

#include "ipr/dyadic.hpp"
#include "ipr/error.hpp"
#include "ipr/rational.hpp"
#include "ipr/verify.hpp"

using namespace ipr;

TEST_CASE("rational literals round trip") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(rational_to_string(Rational(3, 4)) == "3/4");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK(rational_to_string(Rational(-6, 4)) == "-3/2");
    CHECK(rational_to_string(Rational(0)) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("rational arithmetic is exact and canonical") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(rat_den(a + b) == 2);
    CHECK(rat_num(parse_rational("2/-4")) == -1);  // sign normalizes into the numerator
    CHECK(rat_den(parse_rational("2/-4")) == 2);
    CHECK(rat_num(Rational(2, 4)) == 1);
}

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(Rational(1)) == 0);
    CHECK(ceil_log2(Rational(1, 8)) == 0);
    CHECK(ceil_log2(Rational(8)) == 3);
    CHECK(ceil_log2(Rational(9)) == 4);
    CHECK(ceil_log2(Rational(17, 16)) == 1);
}

TEST_CASE("dyadic_from_rational examples") {
    CHECK(Dyadic::from_rational(Rational(1)).support() == std::vector<int32_t>{0});
    CHECK(Dyadic::from_rational(Rational(9, 8)).support() == std::vector<int32_t>{-3, 0});
    CHECK_THROWS_AS(Dyadic::from_rational(Rational(1, 3)), Error);
    CHECK_THROWS_AS(Dyadic::from_rational(Rational(0)), Error);
    CHECK_THROWS_AS(Dyadic::from_rational(Rational(-1, 2)), Error);
    try {
        Dyadic::from_rational(Rational(5, 6));
        FAIL("expected NotDyadic");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotDyadic);
    }
}

TEST_CASE("phi examples") {
    auto phi = [](const char* lit) {
        return Dyadic::from_rational(parse_rational(lit)).phi_even_zero_blocks();
    };
    CHECK(phi("1") == 0);       // start = end, no interior
    CHECK(phi("9/8") == 1);     // 1.001, one run of two zeros
    CHECK(phi("5/4") == 0);     // 1.01, run of one zero
    CHECK(phi("73/64") == 2);   // 1.001001
    CHECK_THROWS_AS(Dyadic().phi_even_zero_blocks(), Error);
}

TEST_CASE("dyadic round trip over the window grid") {
    // every dyadic with support inside [-12, 0]
    for (unsigned long mask = 1; mask < (1ul << 13); ++mask) {
        Rational q = Rational(mask) * pow2(-12);
        Dyadic d = Dyadic::from_rational(q);
        CHECK(d.to_rational() == q);
    }
}

TEST_CASE("phi agrees with the bit-string scanner") {
    for (unsigned long mask = 1; mask < (1ul << 13); ++mask) {
        Dyadic d = Dyadic::from_rational(Rational(mask) * pow2(-12));
        CHECK(d.phi_even_zero_blocks() == phi_even_zero_blocks_by_scan(d));
    }
}

TEST_CASE("phi is shift invariant") {
    for (unsigned long mask = 1; mask < (1ul << 10); ++mask) {
        Dyadic d = Dyadic::from_rational(Rational(mask) * pow2(-9));
        CHECK(d.phi_even_zero_blocks() == d.shifted(1).phi_even_zero_blocks());
        CHECK(d.shifted(1).to_rational() == d.to_rational() * 2);
    }
}

TEST_CASE("dyadic addition carries exactly") {
    Dyadic a = Dyadic::from_rational(Rational(3, 4));
    Dyadic b = Dyadic::from_rational(Rational(1, 4));
    CHECK(a.plus(b).to_rational() == Rational(1));
    CHECK(a.plus(b).support() == std::vector<int32_t>{0});
}

TEST_CASE("support is canonical") {
    Dyadic d = Dyadic::from_support({0, -3});
    CHECK(d.support() == std::vector<int32_t>{-3, 0});
    CHECK(d.start() == 0);
    CHECK(d.end() == -3);
    CHECK(d.in_unit_two_interval());
    CHECK_FALSE(Dyadic::from_support({1}).in_unit_two_interval());
    CHECK_THROWS_AS(Dyadic::from_support({2, 2}), Error);
}
