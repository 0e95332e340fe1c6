#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "puiseux/series.hpp"

using namespace puiseux;

namespace {

PuiseuxSeries mono(const Rat& e, long c) {
    return PuiseuxSeries::monomial(e, Coeff(c));
}

std::mt19937 rng(4242);

PuiseuxSeries rand_series() {
    std::uniform_int_distribution<int> nterms(0, 4), num(1, 9), den(1, 4), cval(-3, 3);
    std::vector<PuiseuxSeries::Term> ts;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        long c = cval(rng);
        if (c == 0) c = 1;
        ts.push_back({rat(num(rng), den(rng)), Coeff(c)});
    }
    return PuiseuxSeries::from_terms(std::move(ts));
}

}  // namespace

TEST_CASE("order") {
    PuiseuxSeries a = mono(rat(3, 2), 1) + mono(rat(7, 4), 1);
    CHECK(a.order() == ExtRat(rat(3, 2)));
    CHECK(PuiseuxSeries::zero().order() == ExtRat::infinity());
    CHECK((mono(Rat(1), 2) + mono(Rat(3), 1)).order() == ExtRat(Rat(1)));
}

TEST_CASE("puiseux multiplicity") {
    CHECK((mono(rat(3, 2), 1) + mono(rat(7, 4), 1)).multiplicity() == 4);
    CHECK(mono(Rat(2), 1).multiplicity() == 1);
    CHECK(mono(rat(3, 2), 1).multiplicity() == 2);
}

TEST_CASE("conjugates") {
    // N = 2: theta = -1
    auto c2 = conjugates(mono(rat(3, 2), 1));
    REQUIRE(c2.size() == 2);
    CHECK(c2[0].leading_coeff().exact() == GaussRat(1));
    CHECK(c2[1].leading_coeff().exact() == GaussRat(-1));
    // N = 1: identity
    auto c1 = conjugates(mono(Rat(2), 1));
    REQUIRE(c1.size() == 1);
    // N = 4: coefficients i^{6k}, i^{7k} on the two terms
    PuiseuxSeries a = mono(rat(3, 2), 1) + mono(rat(7, 4), 1);
    auto c4 = conjugates(a);
    REQUIRE(c4.size() == 4);
    for (long k = 0; k < 4; ++k) {
        CHECK(c4[k].coeff_at(rat(3, 2)).exact() == i_pow(6 * k));
        CHECK(c4[k].coeff_at(rat(7, 4)).exact() == i_pow(7 * k));
    }
}

TEST_CASE("conjugation composes additively in the index") {
    PuiseuxSeries a = mono(rat(3, 2), 2) + mono(rat(7, 4), -3) + mono(Rat(2), 1);
    long n = a.multiplicity().get_si();
    auto cs = conjugates(a);
    for (long k = 0; k < n; ++k) {
        auto inner = conjugates(cs[k]);
        REQUIRE(inner.size() == static_cast<size_t>(n));
        for (long k2 = 0; k2 < n; ++k2) {
            const auto& lhs = inner[k2];
            const auto& rhs = cs[(k + k2) % n];
            REQUIRE(lhs.terms().size() == rhs.terms().size());
            for (size_t i = 0; i < lhs.terms().size(); ++i)
                CHECK(possibly_equal(lhs.terms()[i].coeff, rhs.terms()[i].coeff));
        }
    }
}

TEST_CASE("metric norm") {
    CHECK(metric_norm(PuiseuxSeries::zero()).contains(Rat(0)));
    // |y| = 2^{-1} * 1/(1+1) = 1/4
    CHECK(metric_norm(mono(Rat(1), 1)).contains(rat(1, 4)));
    // |y^{1/2} + y| = 2^{-1/2}/2 + 1/4
    RealBall m = metric_norm(mono(rat(1, 2), 1) + mono(Rat(1), 1));
    CHECK(m.mid_d() == Catch::Approx(0.25 + std::sqrt(0.5) / 2).epsilon(1e-12));
    CHECK(m.width() < 1e-20);
}

TEST_CASE("metric triangle inequality on random triples") {
    for (int iter = 0; iter < 40; ++iter) {
        PuiseuxSeries a = rand_series(), b = rand_series(), c = rand_series();
        RealBall lhs = metric_norm(a - c);
        RealBall rhs = metric_norm(a - b) + metric_norm(b - c);
        // lhs <= rhs within enclosure width
        CHECK(mpfr_cmp(lhs.lo(), rhs.hi()) <= 0);
    }
}

TEST_CASE("contact order") {
    PuiseuxSeries a = mono(rat(3, 2), 1) + mono(rat(7, 4), 1);
    PuiseuxSeries b = mono(rat(3, 2), 1);
    CHECK(contact_order_series(a, b) == ExtRat(rat(7, 4)));
    CHECK(contact_order_series(a, a) == ExtRat::infinity());
    // curve-level matches a conjugate: C_ord(y^{3/2}, -y^{3/2}) = inf
    PuiseuxSeries c = mono(rat(3, 2), 1), d = mono(rat(3, 2), -1);
    CHECK(contact_order_series(c, d) == ExtRat(rat(3, 2)));
    CHECK(contact_order_curve(c, d) == ExtRat::infinity());
    // truncation too short: equal stored parts, different truncations
    PuiseuxSeries e = c.truncated(ExtRat(Rat(2)));
    PuiseuxSeries f = c.truncated(ExtRat(Rat(3)));
    CHECK_THROWS_AS(contact_order_series(e, f), TruncationError);
}

TEST_CASE("curve-level contact: single max equals double max on random input") {
    for (int iter = 0; iter < 25; ++iter) {
        PuiseuxSeries a = rand_series(), b = rand_series();
        ExtRat single;
        try {
            single = contact_order_curve(a, b);
        } catch (const AmbiguousZeroError&) {
            continue;
        }
        ExtRat dbl(Rat(0));
        bool first = true;
        for (const auto& ac : conjugates(a))
            for (const auto& bc : conjugates(b)) {
                ExtRat c0;
                try {
                    c0 = contact_order_series(ac, bc);
                } catch (const AmbiguousZeroError&) {
                    continue;  // ball cancellation; the exact max is unaffected
                }
                if (first || dbl < c0) dbl = c0;
                first = false;
            }
        CHECK(single == dbl);
    }
}

TEST_CASE("ultrametric inequality on random triples") {
    for (int iter = 0; iter < 60; ++iter) {
        PuiseuxSeries a = rand_series(), b = rand_series(), c = rand_series();
        try {
            ExtRat ac = contact_order_series(a, c);
            ExtRat ab = contact_order_series(a, b);
            ExtRat bc = contact_order_series(b, c);
            CHECK(!(ac < min(ab, bc)));
        } catch (const TruncationError&) {
            // identical-to-truncation pairs carry no information
        }
    }
}

TEST_CASE("puiseux characteristic pairs") {
    PuiseuxSeries a = mono(rat(3, 2), 1) + mono(rat(7, 4), 1);
    auto pa = puiseux_pairs(a);
    REQUIRE(pa.size() == 2);
    CHECK(pa[0] == rat(3, 2));
    CHECK(pa[1] == rat(7, 4));
    auto pb = puiseux_pairs(mono(rat(3, 2), 1));
    REQUIRE(pb.size() == 1);
    CHECK(pb[0] == rat(3, 2));
    CHECK(puiseux_pairs(mono(Rat(2), 1) + mono(Rat(3), 1)).empty());
}

TEST_CASE("pairs lcm equals the puiseux multiplicity") {
    for (int iter = 0; iter < 40; ++iter) {
        PuiseuxSeries a = rand_series();
        Int l = 1;
        for (const auto& p : puiseux_pairs(a)) l = lcm_int(l, rat_den(p));
        CHECK(l == a.multiplicity());
    }
}

TEST_CASE("truncation bookkeeping through arithmetic") {
    PuiseuxSeries a = mono(Rat(1), 1).truncated(ExtRat(Rat(3)));  // y + O(y^3)
    PuiseuxSeries b = mono(Rat(2), 1);                            // y^2, exact
    PuiseuxSeries s = a + b;
    CHECK(s.trunc() == ExtRat(Rat(3)));
    PuiseuxSeries p = a * b;  // known below 2 + 3
    CHECK(p.trunc() == ExtRat(Rat(5)));
    PuiseuxSeries d = a.deleted_above(Rat(2));
    CHECK(d.trunc().is_infinite());
    CHECK_THROWS_AS(a.deleted_above(Rat(4)), TruncationError);
}
