#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "puiseux/io.hpp"
#include "puiseux/svg.hpp"

using namespace puiseux;

namespace {

std::mt19937 rng(555);

PolyXYT rand_polyxyt(bool with_t) {
    std::uniform_int_distribution<int> nterms(1, 7), expo(0, 4), cn(-9, 9), cd(1, 4);
    PolyXYT p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        GaussRat c(rat(cn(rng), cd(rng)), rat(cn(rng), cd(rng)));
        p.add_term(expo(rng), expo(rng), with_t ? expo(rng) : 0, c);
    }
    return p;
}

}  // namespace

TEST_CASE("parsing the paper families") {
    PolyXYT q = parse_poly("x^4 - t^2*x^2*y^2 + y^4");
    CHECK(q.terms.size() == 3);
    CHECK(q.terms.at({4, 0, 0}) == GaussRat(1));
    CHECK(q.terms.at({2, 2, 2}) == GaussRat(-1));
    CHECK(q.terms.at({0, 4, 0}) == GaussRat(1));

    PolyXYT p = parse_poly("x^3 - y^4 - 3*t^2*x*y^4");
    CHECK(p.terms.at({1, 4, 2}) == GaussRat(-3));

    PolyXYT g = parse_poly("(x^2-y^4)^2 - y^10");
    PolyXYT x = PolyXYT::mono(1, 0, 0, GaussRat(1));
    PolyXYT y4 = PolyXYT::mono(0, 4, 0, GaussRat(1));
    CHECK(g == (x * x - y4).pow(2) - PolyXYT::mono(0, 10, 0, GaussRat(1)));

    PolyXYT r = parse_poly("1/2*x + i*y - 3/4");
    CHECK(r.terms.at({1, 0, 0}) == GaussRat(rat(1, 2)));
    CHECK(r.terms.at({0, 1, 0}) == GaussRat::i());
    CHECK(r.terms.at({0, 0, 0}) == GaussRat(rat(-3, 4)));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_poly("x + z"), ParseError);
    CHECK_THROWS_AS(parse_poly("x^-2"), ParseError);
    CHECK_THROWS_AS(parse_poly("x +"), ParseError);
    CHECK_THROWS_AS(parse_poly("(x"), ParseError);
    try {
        parse_poly("x + q");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.column == 5);
        CHECK(std::string(e.what()).find("unknown variable") != std::string::npos);
    }
}

TEST_CASE("round trip: parse(render(p)) == p") {
    for (int iter = 0; iter < 50; ++iter) {
        PolyXYT p = rand_polyxyt(iter % 2 == 0);
        std::string text = p.str();
        PolyXYT q = parse_poly(text);
        CHECK(p == q);
    }
}

TEST_CASE("JSON output is deterministic") {
    XiPolyC phi;
    phi.a.resize(3);
    phi.a[0] = PuiseuxSeries::monomial(Rat(3), Coeff(-2));
    phi.a[2] = PuiseuxSeries::monomial(Rat(0), Coeff(1));
    KuoLuTree t1 = analyze(phi);
    KuoLuTree t2 = analyze(phi);
    CHECK(tree_json(t1).dump() == tree_json(t2).dump());
    auto P1 = build_polygon(phi, -64);
    CHECK(polygon_json(P1).dump() == polygon_json(build_polygon(phi, -64)).dump());
}

TEST_CASE("series JSON schema fields") {
    PuiseuxSeries s = PuiseuxSeries::monomial(rat(3, 2), Coeff(1)) +
                      PuiseuxSeries::monomial(rat(7, 4), Coeff(-1));
    Json j = series_json(s);
    CHECK(j["denom"] == "4");
    REQUIRE(j["terms"].size() == 2);
    CHECK(j["terms"][0][0] == "6");
    CHECK(j["terms"][1][0] == "7");
    CHECK(j["trunc"].is_null());
}

TEST_CASE("mini-regularization") {
    // already mini-regular
    PolyXYT f1 = parse_poly("x^2 - y^3");
    auto m1 = mini_regularize(f1);
    CHECK(m1.shear == 0);
    CHECK(m1.order == 2);
    CHECK(m1.f == f1);
    // y^2 - x^3: H_2 = y^2 vanishes along x; shear c = 1
    auto m2 = mini_regularize(parse_poly("y^2 - x^3"));
    CHECK(m2.shear == 1);
    CHECK(m2.order == 2);
    CHECK(m2.f.to_xi().mini_regular_order() == 2);
    // xy needs a shear as well
    auto m3 = mini_regularize(parse_poly("x*y"));
    CHECK(m3.shear == 1);
    CHECK(m3.f.to_xi().mini_regular_order() == 2);
}

TEST_CASE("conjugacy classes group geometric branches") {
    // (x^2 - y^3)(x - y): three branches, classes {conjugate pair} + {y}
    PolyXYT f = parse_poly("(x^2 - y^3)*(x - y)");
    auto branches = expand_roots(f.to_xi());
    REQUIRE(branches.size() == 3);
    auto cls = conjugacy_classes(branches);
    std::map<int, int> sizes;
    for (int c : cls) sizes[c]++;
    REQUIRE(sizes.size() == 2);
    bool has1 = false, has2 = false;
    for (auto& [c, n] : sizes) {
        if (n == 1) has1 = true;
        if (n == 2) has2 = true;
    }
    CHECK(has1);
    CHECK(has2);
}

TEST_CASE("SVG emission produces well-formed documents") {
    XiPolyC phi;
    phi.a.resize(4);
    phi.a[0] = PuiseuxSeries::monomial(Rat(4), Coeff(1));
    phi.a[2] = PuiseuxSeries::monomial(Rat(1), Coeff(2));
    phi.a[3] = PuiseuxSeries::monomial(Rat(0), Coeff(1));
    auto P = build_polygon(phi, -64);
    std::string svg = polygon_svg(P);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);

    KuoLuTree tree = analyze(parse_poly("(x^2-y^3)^2 - 4*x*y^5").to_xi());
    std::string tsvg = tree_svg(tree);
    CHECK(tsvg.find("<svg") == 0);
    CHECK(tsvg.find("stroke-dasharray") != std::string::npos);  // critical marks
}
