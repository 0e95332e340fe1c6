#ifndef PUISEUX_XI_POLY_HPP
#define PUISEUX_XI_POLY_HPP

#include <string>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/series.hpp"

namespace puiseux {

// Polynomial in xi whose coefficients are truncated fractional power series
// in y: phi(xi) = sum_k a_k(y) xi^k. C is the series coefficient ring.
template <class C>
struct XiPoly {
    std::vector<Series<C>> a;  // a[k] multiplies xi^k

    XiPoly() = default;
    explicit XiPoly(std::vector<Series<C>> coeffs) : a(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!a.empty() && a.back().known_zero()) a.pop_back();
    }

    int degree() const { return static_cast<int>(a.size()) - 1; }
    bool zero() const { return a.empty(); }

    const Series<C>& coeff(int k) const {
        static const Series<C> kZero;
        if (k < 0 || k >= static_cast<int>(a.size())) return kZero;
        return a[k];
    }

    // phi(alpha + xi) by iterated Horner shift; exact on the stored data,
    // truncation bounds propagate through the series arithmetic.
    XiPoly recentered(const Series<C>& alpha) const {
        if (alpha.known_zero()) return *this;
        XiPoly r = *this;
        int n = r.degree();
        for (int k = 0; k < n; ++k)
            for (int j = n - 1; j >= k; --j)
                r.a[j] = r.a[j] + alpha * r.a[j + 1];
        r.normalize();
        return r;
    }

    // phi(mu(y), y).
    Series<C> evaluate(const Series<C>& mu) const {
        Series<C> r;
        for (size_t i = a.size(); i-- > 0;) r = r * mu + a[i];
        return r;
    }

    // d phi / d xi.
    XiPoly derivative() const {
        XiPoly r;
        for (size_t k = 1; k < a.size(); ++k)
            r.a.push_back(a[k] * C(static_cast<long>(k)));
        r.normalize();
        return r;
    }

    // The mini-regularity order m: O(a_m) = 0 with O(a_k) + k >= m below.
    // Throws NonMiniRegularError naming the failing condition.
    int mini_regular_order() const {
        int m = -1;
        for (size_t k = 0; k < a.size(); ++k) {
            if (a[k].empty()) continue;
            const Rat& e0 = a[k].terms().front().exp;
            if (sgn(e0) > 0) continue;
            if (sgn(e0) < 0)
                throw NonMiniRegularError("mini-regularity: coefficient of xi^" +
                                          std::to_string(k) + " has negative y-order");
            if (zero_status_of(a[k].terms().front().coeff) == ZeroStatus::kMaybeZero)
                throw AmbiguousZeroError("mini-regularity: undecided order-0 coefficient");
            m = static_cast<int>(k);
            break;
        }
        if (m < 0)
            throw NonMiniRegularError("mini-regularity: no coefficient of y-order 0");
        for (int k = 0; k < m; ++k) {
            Rat need(m - k);
            // a_k must vanish below y^{m-k}
            if (a[k].trunc() < ExtRat(need))
                throw TruncationError("mini-regularity: coefficient of xi^" +
                                      std::to_string(k) + " not stored to y-order " +
                                      need.get_str());
            for (const auto& t : a[k].terms()) {
                if (!(t.exp < need)) break;
                ZeroStatus zs = zero_status_of(t.coeff);
                if (zs == ZeroStatus::kNonZero)
                    throw NonMiniRegularError(
                        "mini-regularity: O(a_" + std::to_string(k) + ") + " +
                        std::to_string(k) + " < " + std::to_string(m));
                if (zs == ZeroStatus::kMaybeZero)
                    throw AmbiguousZeroError(
                        "mini-regularity: undecided low-order coefficient of xi^" +
                        std::to_string(k));
            }
        }
        return m;
    }

    XiPoly cleaned(long tiny_exp) const {
        XiPoly r;
        r.a.reserve(a.size());
        for (const auto& s : a) r.a.push_back(s.cleaned(tiny_exp));
        r.normalize();
        return r;
    }

    std::string str(const std::string& var = "x") const {
        std::string s;
        for (size_t k = a.size(); k-- > 0;) {
            if (a[k].known_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = series_str(a[k]);
            if (k == 0) {
                s += "(" + cs + ")";
            } else {
                std::string base = k == 1 ? var : var + "^" + std::to_string(k);
                s += cs == "1" ? base : "(" + cs + ")*" + base;
            }
        }
        return s.empty() ? "0" : s;
    }
};

template <class C>
XiPoly<C> xi_mul(const XiPoly<C>& a, const XiPoly<C>& b) {
    XiPoly<C> r;
    if (a.zero() || b.zero()) return r;
    r.a.resize(a.a.size() + b.a.size() - 1);
    for (size_t i = 0; i < a.a.size(); ++i)
        for (size_t j = 0; j < b.a.size(); ++j)
            r.a[i + j] = r.a[i + j] + a.a[i] * b.a[j];
    r.normalize();
    return r;
}

template <class C>
XiPoly<C> xi_pow(const XiPoly<C>& a, unsigned k) {
    XiPoly<C> r;
    r.a.push_back(Series<C>::monomial(Rat(0), C(1)));
    XiPoly<C> base = a;
    while (k) {
        if (k & 1u) r = xi_mul(r, base);
        if (k >>= 1u) base = xi_mul(base, base);
    }
    return r;
}

using XiPolyC = XiPoly<Coeff>;
using XiPolyT = XiPoly<TPoly>;

// Lift a value-level series/polynomial into the t-family ring (constant in t).
inline TSeries lift_to_family(const PuiseuxSeries& s) {
    std::vector<TSeries::Term> ts;
    ts.reserve(s.terms().size());
    for (const auto& t : s.terms()) ts.push_back({t.exp, TPoly(t.coeff)});
    return TSeries::from_terms(std::move(ts), s.trunc());
}

inline XiPolyT lift_to_family(const XiPolyC& p) {
    XiPolyT r;
    r.a.reserve(p.a.size());
    for (const auto& s : p.a) r.a.push_back(lift_to_family(s));
    r.normalize();
    return r;
}

// Specialize the family parameter t to an exact rational value.
inline PuiseuxSeries specialize_t(const TSeries& s, const GaussRat& t0) {
    std::vector<PuiseuxSeries::Term> ts;
    for (const auto& term : s.terms()) ts.push_back({term.exp, term.coeff.eval(Coeff(t0))});
    return PuiseuxSeries::from_terms(std::move(ts), s.trunc());
}

inline XiPolyC specialize_t(const XiPolyT& p, const GaussRat& t0) {
    XiPolyC r;
    r.a.reserve(p.a.size());
    for (const auto& s : p.a) r.a.push_back(specialize_t(s, t0));
    r.normalize();
    return r;
}

}  // namespace puiseux

#endif
