#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "puiseux/newton_polygon.hpp"
#include "puiseux/polyxy.hpp"

using namespace puiseux;

namespace {

XiPolyC from_xy(std::vector<std::tuple<int, int, long>> monos) {
    XiPolyC phi;
    for (auto& [i, j, c] : monos) {
        if (static_cast<int>(phi.a.size()) <= i) phi.a.resize(i + 1);
        phi.a[i] = phi.a[i] + PuiseuxSeries::monomial(Rat(j), Coeff(c));
    }
    phi.normalize();
    return phi;
}

QPoly qp(std::vector<long> cs) {
    QPoly p;
    for (long c : cs) p.c.push_back(GaussRat(c));
    p.normalize();
    return p;
}

bool assoc_equals(const CPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return false;
    for (int i = 0; i <= a.degree(); ++i) {
        if (!a.at(i).is_exact()) return false;
        if (!(a.at(i).exact() == b.at(i))) return false;
    }
    return true;
}

std::mt19937 rng(99);

// O(n^2) gift-wrapping oracle for the lower-left hull: from the bottom
// vertex walk up-left always taking the shallowest co-slope, ties resolved
// to the farthest dot.
std::vector<std::pair<int, Rat>> wrap_hull(std::vector<std::pair<int, Rat>> dots) {
    // per-k minimum
    std::map<int, Rat> best;
    for (auto& [k, q] : dots) {
        auto it = best.find(k);
        if (it == best.end() || q < it->second) best[k] = q;
    }
    // bottom vertex: min q, then min k
    std::pair<int, Rat> cur{0, Rat(0)};
    bool first = true;
    for (auto& [k, q] : best) {
        if (first || q < cur.second || (q == cur.second && k < cur.first)) {
            cur = {k, q};
            first = false;
        }
    }
    std::vector<std::pair<int, Rat>> chain{cur};
    while (true) {
        bool found = false;
        std::pair<int, Rat> nxt;
        Rat best_h;
        for (auto& [k, q] : best) {
            if (k >= cur.first || !(q > cur.second)) continue;
            Rat h = (q - cur.second) / Rat(cur.first - k);
            if (!found || h < best_h ||
                (h == best_h && cur.first - k > cur.first - nxt.first)) {
                found = true;
                best_h = h;
                nxt = {k, q};
            }
        }
        if (!found) break;
        chain.push_back(nxt);
        cur = nxt;
    }
    return chain;  // bottom vertex first, then up-left
}

}  // namespace

TEST_CASE("taylor recentering") {
    // phi = xi^2 - 2y^3 at alpha = y^{3/2}: xi^2 + 2 y^{3/2} xi - y^3
    XiPolyC phi = from_xy({{2, 0, 1}, {0, 3, -2}});
    XiPolyC r = phi.recentered(PuiseuxSeries::monomial(rat(3, 2), Coeff(1)));
    CHECK(series_str(r.coeff(0)) == "-y^3");
    CHECK(series_str(r.coeff(1)) == "2*y^(3/2)");
    CHECK(series_str(r.coeff(2)) == "1");
    // identity recentering
    XiPolyC r0 = phi.recentered(PuiseuxSeries::zero());
    CHECK(series_str(r0.coeff(0)) == series_str(phi.coeff(0)));
    // phi = xi^3 + 2y xi^2 + y^4 at alpha = -2y: xi^3 - 4y xi^2 + 4y^2 xi + y^4
    XiPolyC phi2 = from_xy({{3, 0, 1}, {2, 1, 2}, {0, 4, 1}});
    XiPolyC r2 = phi2.recentered(PuiseuxSeries::monomial(Rat(1), Coeff(-2)));
    CHECK(series_str(r2.coeff(0)) == "y^4");
    CHECK(series_str(r2.coeff(1)) == "4*y^2");
    CHECK(series_str(r2.coeff(2)) == "-4*y");
    CHECK(series_str(r2.coeff(3)) == "1");
}

TEST_CASE("newton polygon of phi1 and phi2 (the figure examples)") {
    XiPolyC phi1 = from_xy({{3, 0, 1}, {2, 1, 2}, {0, 4, 1}});
    REQUIRE(phi1.mini_regular_order() == 3);
    auto P1 = build_polygon(phi1);
    auto pe = P1.proper_edges();
    REQUIRE(pe.size() == 2);
    CHECK(pe[0]->coslope == ExtRat(Rat(1)));
    CHECK(pe[1]->coslope == ExtRat(rat(3, 2)));
    CHECK(assoc_equals(pe[0]->assoc, qp({0, 0, 2, 1})));  // z^3 + 2z^2
    CHECK(assoc_equals(pe[1]->assoc, qp({1, 0, 2})));     // 2z^2 + 1
    CHECK(P1.edges.front().kind == EdgeKind::Horizontal);
    CHECK(P1.edges.back().kind == EdgeKind::Vertical);
    CHECK(P1.last_vertex == Vertex2{0, Rat(4)});
    // Lojasiewicz exponents: L(E_1) = 3, L(E_top) = 4, L(E_l) = inf
    CHECK(pe[0]->lojasiewicz() == ExtRat(Rat(3)));
    CHECK(pe[1]->lojasiewicz() == ExtRat(Rat(4)));
    CHECK(P1.edges.back().lojasiewicz() == ExtRat::infinity());

    XiPolyC phi2 = from_xy({{3, 0, 1}, {2, 1, 2}});
    auto P2 = build_polygon(phi2);
    auto pe2 = P2.proper_edges();
    REQUIRE(pe2.size() == 1);
    CHECK(assoc_equals(pe2[0]->assoc, qp({0, 0, 2, 1})));  // P_top = z^3 + 2z^2
    CHECK(P2.last_vertex == Vertex2{2, Rat(1)});           // E_2 = E_l vertical there
}

TEST_CASE("newton polygon of (xi^2-y^3)^2 - 4 xi y^5") {
    XiPolyC phi = from_xy({{4, 0, 1}, {2, 3, -2}, {0, 6, 1}, {1, 5, -4}});
    auto P = build_polygon(phi);
    auto pe = P.proper_edges();
    REQUIRE(pe.size() == 1);
    CHECK(pe[0]->coslope == ExtRat(rat(3, 2)));
    // single edge through (4,0), (2,3), (0,6); the dot (1,5) lies above
    REQUIRE(pe[0]->dots.size() == 3);
    CHECK(pe[0]->dots[0].k == 0);
    CHECK(pe[0]->dots[1].k == 2);
    CHECK(pe[0]->dots[2].k == 4);
    CHECK(assoc_equals(pe[0]->assoc, qp({1, 0, -2, 0, 1})));
    CHECK(P.dot_at(1) != nullptr);  // the off-edge dot is retained in the dot set

    // vertex edge query at h = 1: vertex (4,0), assoc z^4
    auto e1 = P.edge_at_coslope(Rat(1));
    CHECK(e1.kind == EdgeKind::Vertex);
    CHECK(e1.left == Vertex2{4, Rat(0)});
    CHECK(assoc_equals(e1.assoc, qp({0, 0, 0, 0, 1})));
}

TEST_CASE("extended polygon queries") {
    XiPolyC phi1 = from_xy({{3, 0, 1}, {2, 1, 2}, {0, 4, 1}});
    auto P1 = build_polygon(phi1);
    // h = 1 hits the proper edge E_1
    auto e = P1.edge_at_coslope(Rat(1));
    CHECK(e.kind == EdgeKind::Proper);
    CHECK(assoc_equals(e.assoc, qp({0, 0, 2, 1})));
    // h between 1 and 3/2: vertex edge at (2,1), assoc 2z^2
    auto ev = P1.edge_at_coslope(rat(5, 4));
    CHECK(ev.kind == EdgeKind::Vertex);
    CHECK(ev.left == Vertex2{2, Rat(1)});
    CHECK(assoc_equals(ev.assoc, qp({0, 0, 2})));
    // h above the top co-slope with m_l = 0: artificial vertex, constant assoc
    XiPolyC rec = from_xy({{2, 0, 1}, {0, 3, -2}})
                      .recentered(PuiseuxSeries::monomial(rat(3, 2), Coeff(1)));
    auto P = build_polygon(rec);
    CHECK(P.root_multiplicity() == 0);
    auto ea = P.edge_at_coslope(Rat(2));
    CHECK(ea.kind == EdgeKind::ArtificialVertex);
    CHECK(ea.left == Vertex2{0, Rat(3)});
    CHECK(assoc_equals(ea.assoc, qp({-1})));
    CHECK_THROWS_AS(P.edge_at_coslope(Rat(0)), Error);
}

TEST_CASE("dots on an edge share its Lojasiewicz value") {
    XiPolyC phi = from_xy({{4, 0, 1}, {2, 3, -2}, {0, 6, 1}, {1, 5, -4}});
    auto P = build_polygon(phi);
    for (const auto* e : P.proper_edges()) {
        Rat h = e->coslope.value();
        Rat L = e->right.second + Rat(e->right.first) * h;
        for (const auto& d : e->dots) CHECK(d.q + Rat(d.k) * h == L);
    }
}

TEST_CASE("conjugation invariance of the polygon") {
    // phi from f(x,y) with exact coefficients; alpha with N = 2
    XiPolyC phi = from_xy({{4, 0, 1}, {2, 3, -2}, {0, 6, 1}, {1, 5, -4}});
    PuiseuxSeries alpha =
        PuiseuxSeries::monomial(rat(3, 2), Coeff(1)) + PuiseuxSeries::monomial(Rat(2), Coeff(3));
    for (const auto& ac : conjugates(alpha)) {
        auto A = build_polygon(phi.recentered(alpha));
        auto B = build_polygon(phi.recentered(ac));
        CHECK(polygon_shape_equal(A, B));
    }
}

TEST_CASE("hull against the quadratic-time wrapping oracle") {
    std::uniform_int_distribution<int> nk(2, 8), qnum(0, 12), qden(1, 3);
    for (int iter = 0; iter < 100; ++iter) {
        int n = nk(rng);
        std::vector<Dot<Coeff>> ds;
        std::vector<std::pair<int, Rat>> raw;
        std::set<int> used;
        for (int i = 0; i < n; ++i) {
            int k = nk(rng) - 2;
            if (used.count(k)) continue;
            used.insert(k);
            Rat q = rat(qnum(rng), qden(rng));
            ds.push_back(Dot<Coeff>{k, q, Coeff(1)});
            raw.push_back({k, q});
        }
        if (ds.empty()) continue;
        auto P = build_polygon_from_dots(ds);
        auto chain = wrap_hull(raw);
        // oracle chain = bottom vertex then up-left = right vertices of the
        // proper edges in order, ending at the last vertex
        auto pe = P.proper_edges();
        REQUIRE(chain.size() == pe.size() + 1);
        for (size_t i = 0; i < pe.size(); ++i) {
            CHECK(pe[i]->right == chain[i]);
            CHECK(pe[i]->left == chain[i + 1]);
        }
        if (!pe.empty()) CHECK(P.last_vertex == chain.back());
    }
}

TEST_CASE("mini-regularity failures are named") {
    // no order-0 coefficient
    XiPolyC bad = from_xy({{2, 1, 1}, {0, 3, 1}});
    CHECK_THROWS_AS(bad.mini_regular_order(), NonMiniRegularError);
    // low coefficient violates O(a_k) + k >= m
    XiPolyC bad2 = from_xy({{3, 0, 1}, {0, 1, 1}});
    CHECK_THROWS_AS(bad2.mini_regular_order(), NonMiniRegularError);
}
