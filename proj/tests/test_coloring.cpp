#include "doctest.h"

#include "ipr/coloring.hpp"
#include "ipr/error.hpp"

#include <map>
#include <set>

using namespace ipr;

TEST_CASE("dyadic three coloring examples") {
    CHECK(dyadic_three_color(Dyadic::from_rational(Rational(1))) == 0);
    CHECK(dyadic_three_color(Dyadic::from_rational(Rational(9, 8))) == 1);
    CHECK(dyadic_three_color(Dyadic::from_rational(Rational(73, 64))) == 2);
    CHECK_THROWS_AS(dyadic_three_color(Dyadic::from_rational(Rational(2))), Error);
    CHECK_THROWS_AS(dyadic_three_color(Dyadic()), Error);
}

TEST_CASE("three color shift invariance inside (0,2)") {
    for (unsigned long mask = 1; mask < (1ul << 10); ++mask) {
        Dyadic d = Dyadic::from_rational(Rational(mask) * pow2(-10));
        Dyadic doubled = d.shifted(1);
        if (!doubled.in_unit_two_interval()) continue;
        CHECK(dyadic_three_color(d) == dyadic_three_color(doubled));
    }
}

TEST_CASE("dyadic-phi coloring partitions the window") {
    Coloring c = Coloring::dyadic_phi(Grid::dyadic_window(-8, 0));
    auto rep = c.validate();
    CHECK(rep.valid);
    REQUIRE(rep.class_sizes.size() == 3);
    size_t total = rep.class_sizes[0] + rep.class_sizes[1] + rep.class_sizes[2];
    CHECK(total == c.domain().size());
    CHECK(rep.class_sizes[0] > 0);
    CHECK(rep.class_sizes[1] > 0);
    CHECK(rep.class_sizes[2] > 0);
}

TEST_CASE("table coloring missing a point is invalid") {
    Grid g = Grid::integer_range(1, 4);
    std::map<Rational, int> table{{Rational(1), 0}, {Rational(2), 1}, {Rational(3), 0}};
    auto rep = Coloring::table(g, 2, table).validate();
    CHECK_FALSE(rep.valid);
}

TEST_CASE("interval coloring splits at the cut") {
    Coloring c = Coloring::interval(Grid::explicit_list({Rational(1, 2), Rational(3, 4), Rational(1), Rational(2)}),
                                    {Rational(1)});
    CHECK(c.r() == 2);
    CHECK(c.color_of(Rational(1, 2)) == 0);
    CHECK(c.color_of(Rational(3, 4)) == 0);
    CHECK(c.color_of(Rational(1)) == 1);
    CHECK(c.color_of(Rational(2)) == 1);
    CHECK(c.validate().valid);
}

TEST_CASE("product coloring of parity") {
    Grid g = Grid::integer_range(1, 20);
    std::map<Rational, int> parity;
    for (long v = 1; v <= 20; ++v) parity.emplace(Rational(v), static_cast<int>(v % 2));
    Coloring base = Coloring::table(g, 2, parity);
    Coloring psi = product_coloring(base, 2);
    // closure trims the domain to 1..10; parity of x pins parity of 2x
    CHECK(psi.domain().size() == 10);
    CHECK(psi.r() == 2);

    // refinement: equal psi class implies equal base color
    for (const auto& x : psi.domain().values) {
        for (const auto& y : psi.domain().values) {
            if (psi.color_of(x) == psi.color_of(y)) CHECK(base.color_of(x) == base.color_of(y));
        }
    }
}

TEST_CASE("product with k=1 has the same partition as the base") {
    Coloring base = Coloring::dyadic_phi(Grid::dyadic_window(-5, 0));
    Coloring psi = product_coloring(base, 1);
    CHECK(psi.domain().size() == base.domain().size());
    for (const auto& x : psi.domain().values) {
        for (const auto& y : psi.domain().values) {
            CHECK((psi.color_of(x) == psi.color_of(y)) == (base.color_of(x) == base.color_of(y)));
        }
    }
}

TEST_CASE("product class count stays under r^k") {
    Coloring base = Coloring::dyadic_phi(Grid::dyadic_window(-7, 0));
    // keep only values whose doubles stay in the window
    std::vector<Rational> closed;
    for (const auto& v : base.domain().values) {
        if (base.domain().contains(v * 2)) closed.push_back(v);
    }
    Coloring psi = product_coloring(base, 2, Grid::explicit_list(closed));
    CHECK(psi.r() <= 9);
    CHECK(psi.validate().valid);
}

TEST_CASE("explicit sub-domain must stay closed") {
    Coloring base = Coloring::dyadic_phi(Grid::dyadic_window(-4, 0));
    try {
        product_coloring(base, 2, Grid::explicit_list({Rational(3, 2)}));  // 3 is outside (0,2)
        FAIL("expected DomainNotClosed");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DomainNotClosed);
    }
}
