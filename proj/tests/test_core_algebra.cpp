#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "puiseux/poly.hpp"
#include "puiseux/xi_poly.hpp"

using namespace puiseux;

namespace {

QPoly qp(std::vector<long> cs) {
    QPoly p;
    for (long c : cs) p.c.push_back(GaussRat(c));
    p.normalize();
    return p;
}

// z-major polynomial over Q(i)[t]
Poly<QPoly> zt(std::vector<std::vector<long>> rows) {
    Poly<QPoly> p;
    for (auto& r : rows) p.c.push_back(qp(r));
    p.normalize();
    return p;
}

// Independent Sylvester-matrix determinant (Laplace expansion) over any field.
template <class K>
K sylvester_resultant(const Poly<K>& a, const Poly<K>& b) {
    int m = a.degree(), n = b.degree();
    int N = m + n;
    std::vector<std::vector<K>> M(N, std::vector<K>(N, K{}));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[r][r + (m - i)] = a.at(i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[n + r][r + (n - i)] = b.at(i);
    // Laplace expansion with memo-free recursion (sizes are tiny in tests)
    std::function<K(std::vector<std::vector<K>>&)> det =
        [&](std::vector<std::vector<K>>& mat) -> K {
        size_t sz = mat.size();
        if (sz == 1) return mat[0][0];
        K acc{};
        for (size_t j = 0; j < sz; ++j) {
            if (is_zero(mat[0][j])) continue;
            std::vector<std::vector<K>> minor(sz - 1, std::vector<K>(sz - 1, K{}));
            for (size_t r = 1; r < sz; ++r) {
                size_t cc = 0;
                for (size_t c = 0; c < sz; ++c) {
                    if (c == j) continue;
                    minor[r - 1][cc++] = mat[r][c];
                }
            }
            K term = mat[0][j] * det(minor);
            if (j % 2) term = -term;
            acc = acc + term;
        }
        return acc;
    };
    return det(M);
}

std::mt19937 rng(20240811);

GaussRat rand_gauss(bool allow_imag = true) {
    std::uniform_int_distribution<long> d(-4, 4);
    return allow_imag && d(rng) > 3 ? GaussRat(Rat(d(rng)), Rat(d(rng)))
                                    : GaussRat(Rat(d(rng)));
}

QPoly rand_poly(int maxdeg) {
    std::uniform_int_distribution<int> dd(1, maxdeg);
    int n = dd(rng);
    QPoly p;
    for (int i = 0; i <= n; ++i) p.c.push_back(rand_gauss());
    if (p.c.back().is_zero()) p.c.back() = GaussRat(1);
    p.normalize();
    return p;
}

}  // namespace

TEST_CASE("squarefree decomposition examples") {
    // z^2 (z - 1)
    auto sf = squarefree_decompose(qp({0, 0, -1, 1}));
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].first == qp({-1, 1}));
    CHECK(sf[0].second == 1);
    CHECK(sf[1].first == qp({0, 1}));
    CHECK(sf[1].second == 2);

    // (z^2 + 1)^2
    auto sf2 = squarefree_decompose(qp({1, 0, 2, 0, 1}));
    REQUIRE(sf2.size() == 1);
    CHECK(sf2[0].first == qp({1, 0, 1}));
    CHECK(sf2[0].second == 2);

    CHECK_THROWS_AS(squarefree_decompose(QPoly()), Error);
}

TEST_CASE("squarefree decomposition over the rational function field in t") {
    // d/dz of z^4 - t^2 z^2: 4z^3 - 2t^2 z = (unit) z (2z^2 - t^2)
    Poly<QPoly> p = zt({{0}, {0, 0, -2}, {0}, {4}});
    FPoly f = lift_to_field(p);
    auto sf = squarefree_decompose(f);
    REQUIRE(sf.size() == 1);  // squarefree: z * (z^2 - t^2/2), multiplicity 1
    CHECK(sf[0].second == 1);
    CHECK(sf[0].first.degree() == 3);
    // brute-force gcd oracle: gcd(p, p') constant means squarefree
    FPoly fp = f.derivative();
    CHECK(poly_gcd(f, fp).degree() == 0);
    // the factor splits exactly as z * (z^2 - t^2/2) over the field
    Poly<QPoly> zfac = zt({{0}, {1}});
    FPoly q = divmod(sf[0].first, lift_to_field(zfac)).second;
    CHECK(q.zero());
}

TEST_CASE("resultant examples") {
    // res(z - a, z - b) = a - b with a = 2, b = 5
    CHECK(resultant(qp({-2, 1}), qp({-5, 1})) == GaussRat(-3));
    // common factor
    CHECK(resultant(qp({-2, 0, 1}), qp({-2, 0, 1})).is_zero());
    CHECK_THROWS_AS(resultant(qp({3}), qp({7})), Error);
}

TEST_CASE("resultant with t-coefficients against the Sylvester oracle") {
    // res_z(z^3 - 3t^2 z - 1, 3z^2 - 3t^2)
    Poly<QPoly> A = zt({{-1}, {0, 0, -3}, {0}, {1}});
    Poly<QPoly> B = zt({{0, 0, -3}, {0}, {3}});
    FPoly a = lift_to_field(A), b = lift_to_field(B);
    QRatFunc r1 = resultant(a, b);
    QRatFunc r2 = sylvester_resultant(a, b);
    CHECK(r1 == r2);
    // frozen value from the oracle: 27 - 108 t^6 = 108 (1/4 - t^6)
    QPoly expected;
    expected.c.assign(7, GaussRat(0));
    expected.c[0] = GaussRat(27);
    expected.c[6] = GaussRat(-108);
    expected.normalize();
    REQUIRE(r1.is_polynomial());
    CHECK(r1.num == expected);
}

TEST_CASE("random squarefree reconstruction") {
    for (int iter = 0; iter < 60; ++iter) {
        QPoly p = rand_poly(4);
        // plant a square to exercise multiplicities
        QPoly sq = rand_poly(2);
        p = p * sq * sq;
        if (p.degree() < 1) continue;
        auto sf = squarefree_decompose(p);
        QPoly prod(GaussRat(1));
        for (const auto& [f, m] : sf) {
            CHECK(poly_gcd(f, f.derivative()).degree() == 0);  // factors squarefree
            prod = prod * f.pow(m);
        }
        // pairwise coprime
        for (size_t i = 0; i < sf.size(); ++i)
            for (size_t j = i + 1; j < sf.size(); ++j)
                CHECK(poly_gcd(sf[i].first, sf[j].first).degree() == 0);
        // p = content * prod
        CHECK(monic(prod) == monic(p));
    }
}

TEST_CASE("resultant vanishes exactly on common factors") {
    for (int iter = 0; iter < 60; ++iter) {
        QPoly a = rand_poly(3), b = rand_poly(3);
        if (a.degree() < 1 || b.degree() < 1) continue;
        QPoly g = rand_poly(2);
        bool planted = iter % 2 == 0 && g.degree() >= 1;
        QPoly A = planted ? a * g : a;
        QPoly B = planted ? b * g : b;
        if (A.degree() < 1 && B.degree() < 1) continue;
        GaussRat r = resultant(A, B);
        bool common = poly_gcd(A, B).degree() > 0;
        CHECK(r.is_zero() == common);
    }
}

TEST_CASE("ball arithmetic contains the exact result") {
    for (int iter = 0; iter < 120; ++iter) {
        GaussRat a = rand_gauss(), b = rand_gauss();
        CBall ba = CBall::from_gauss(a), bb = CBall::from_gauss(b);
        CHECK((ba + bb).contains(a + b));
        CHECK((ba - bb).contains(a - b));
        CHECK((ba * bb).contains(a * b));
        if (!b.is_zero() && bb.definitely_nonzero()) CHECK((ba / bb).contains(a / b));
        CHECK(ba.pow(3).contains(a * a * a));
    }
}
