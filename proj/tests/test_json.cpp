#include "doctest.h"

#include "ipr/error.hpp"
#include "ipr/json_io.hpp"
#include "ipr/search.hpp"
#include "ipr/verify.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

using namespace ipr;

TEST_CASE("matrix json round trip") {
    SparseMatrix m = build_family("mt", 4, {Rational(1), Rational(2)});
    auto j = io::matrix_to_json(m);
    SparseMatrix back = io::matrix_from_json(j);
    CHECK(back == m);
    CHECK(back.family() == m.family());
    CHECK(back.truncation() == m.truncation());
    CHECK(io::dump(io::matrix_to_json(back)) == io::dump(j));
}

TEST_CASE("coloring json round trips") {
    Coloring phi = Coloring::dyadic_phi(Grid::dyadic_window(-6, 0));
    auto j = io::coloring_to_json(phi);
    CHECK(j.find("assignment") == j.end());  // computed on demand, no table
    Coloring back = io::coloring_from_json(j);
    for (const auto& v : phi.domain().values) CHECK(back.color_of(v) == phi.color_of(v));

    Coloring iv = Coloring::interval(Grid::integer_range(1, 6), {Rational(3)});
    Coloring iv_back = io::coloring_from_json(io::coloring_to_json(iv));
    for (const auto& v : iv.domain().values) CHECK(iv_back.color_of(v) == iv.color_of(v));

    Coloring psi = product_coloring(phi, 2);
    Coloring psi_back = io::coloring_from_json(io::coloring_to_json(psi));
    CHECK(psi_back.r() == psi.r());
    for (const auto& v : psi.domain().values) CHECK(psi_back.color_of(v) == psi.color_of(v));
    CHECK(io::dump(io::coloring_to_json(psi_back)) == io::dump(io::coloring_to_json(psi)));
}

TEST_CASE("certificate json round trip byte for byte") {
    SparseMatrix schur = build_family("schur", 2);
    auto avoid = find_avoiding_coloring(schur, 2, Grid::integer_range(1, 4));
    REQUIRE(avoid.status == SearchStatus::Found);
    auto j = io::certificate_to_json(*avoid.certificate);
    Certificate back = io::certificate_from_json(j);
    CHECK(io::dump(io::certificate_to_json(back)) == io::dump(j));
    CHECK(verify_certificate(back).valid);
}

TEST_CASE("tampered witness certificates fail verification with a named entry") {
    SparseMatrix schur = build_family("schur", 2);
    std::map<Rational, int> table{{Rational(1), 0}, {Rational(2), 1}, {Rational(3), 1},
                                  {Rational(4), 0}, {Rational(5), 0}};
    Coloring c = Coloring::table(Grid::integer_range(1, 5), 2, table);
    auto found = find_witness(schur, c, SearchBounds::uniform(Grid::integer_range(1, 5), 2));
    REQUIRE(found.status == SearchStatus::Found);

    auto j = io::certificate_to_json(*found.certificate);
    j["payload"]["image"][1] = "3";  // corrupt one image entry
    Certificate tampered = io::certificate_from_json(j);
    auto rep = verify_certificate(tampered);
    CHECK_FALSE(rep.valid);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().find("entry 1") != std::string::npos);
}

TEST_CASE("malformed certificates raise") {
    io::Json j;
    j["kind"] = "witness";
    CHECK_THROWS_AS(io::certificate_from_json(j), Error);
    try {
        io::certificate_from_json(j);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MalformedCertificate);
    }
}

TEST_CASE("atomic writes leave no partial files") {
    std::string path = "/tmp/ipr_test_artifact.json";
    io::write_file_atomic(path, "{\"ok\": true}\n");
    auto j = io::parse_file(path);
    CHECK(j["ok"] == true);
    std::remove(path.c_str());
    std::remove((path + ".tmp").c_str());
}

TEST_CASE("grid rules rebuild the same values") {
    Grid g1 = Grid::dyadic_window(-5, -1);
    CHECK(Grid::from_rule(g1.rule) == g1);
    Grid g2 = Grid::integer_range(2, 9);
    CHECK(Grid::from_rule(g2.rule) == g2);
    Grid g3 = Grid::explicit_list({Rational(1, 2), Rational(7, 3)});
    CHECK(Grid::from_rule(g3.rule) == g3);
}
