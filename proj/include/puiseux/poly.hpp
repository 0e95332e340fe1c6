#ifndef PUISEUX_POLY_HPP
#define PUISEUX_POLY_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/coeff.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/gauss_rational.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

// Dense univariate polynomial over a commutative ring K. K needs value
// semantics, a default constructor yielding 0, ring operators and a free
// is_zero(). The algorithms further down (gcd, squarefree, resultant)
// additionally require K to be a field.
template <class K>
struct Poly {
    std::vector<K> c;  // c[i] is the coefficient of z^i; trailing zeros stripped

    Poly() = default;
    explicit Poly(K k) {
        if (!is_zero(k)) c.push_back(std::move(k));
    }
    explicit Poly(long n) {
        K k(n);
        if (!is_zero(k)) c.push_back(std::move(k));
    }
    explicit Poly(std::vector<K> cs) : c(std::move(cs)) { normalize(); }

    static Poly monomial(K k, int deg) {
        Poly p;
        if (is_zero(k)) return p;
        p.c.assign(deg + 1, K{});
        p.c[deg] = std::move(k);
        return p;
    }

    void normalize() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    bool zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const K& lc() const {
        if (c.empty()) throw InternalError("Poly: lc of zero polynomial");
        return c.back();
    }
    K at(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return K{};
        return c[i];
    }

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), K{});
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size()) r.c[i] = r.c[i] + a.c[i];
            if (i < b.c.size()) r.c[i] = r.c[i] + b.c[i];
        }
        r.normalize();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        if (a.zero() || b.zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, K{});
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
        r.normalize();
        return r;
    }
    friend Poly operator*(const Poly& a, const K& k) {
        Poly r = a;
        for (auto& x : r.c) x = x * k;
        r.normalize();
        return r;
    }

    Poly pow(unsigned k) const {
        Poly r = Poly::monomial(K(1), 0);
        Poly base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            if (k >>= 1u) base = base * base;
        }
        return r;
    }

    Poly derivative() const {
        Poly r;
        for (size_t i = 1; i < c.size(); ++i) {
            K k = c[i];
            for (size_t j = 1; j < i; ++j) k = k + c[i];  // i * c[i] via repeated add
            r.c.push_back(k);
        }
        r.normalize();
        return r;
    }

    K eval(const K& x) const {
        K r{};
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    // p(z + a) by iterated Horner.
    Poly shifted(const K& a) const {
        Poly r = *this;
        if (r.c.empty()) return r;
        int n = r.degree();
        for (int k = 0; k < n; ++k)
            for (int j = n - 1; j >= k; --j) r.c[j] = r.c[j] + a * r.c[j + 1];
        r.normalize();
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c.size() != b.c.size()) return false;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (!is_zero(a.c[i] - b.c[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

template <class K>
inline bool is_zero(const Poly<K>& p) {
    return p.zero();
}

// --- field-only algorithms ------------------------------------------------

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.zero()) throw InternalError("Poly: division by zero polynomial");
    Poly<K> q, r = a;
    if (r.degree() < b.degree()) return {q, r};
    q.c.assign(r.degree() - b.degree() + 1, K{});
    while (!r.zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        K f = r.lc() / b.lc();
        q.c[d] = f;
        for (int i = 0; i <= b.degree(); ++i)
            r.c[i + d] = r.c[i + d] - f * b.c[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

template <class K>
Poly<K> operator/(const Poly<K>& a, const Poly<K>& b) {
    return divmod(a, b).first;
}
template <class K>
Poly<K> operator%(const Poly<K>& a, const Poly<K>& b) {
    return divmod(a, b).second;
}

template <class K>
bool divides(const Poly<K>& a, const Poly<K>& b) {
    if (a.zero()) return b.zero();
    return divmod(b, a).second.zero();
}

template <class K>
Poly<K> monic(const Poly<K>& p) {
    if (p.zero()) return p;
    K inv = K(1) / p.lc();
    return p * inv;
}

// Monic gcd via the Euclidean algorithm.
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.zero()) {
        Poly<K> r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Yun's squarefree decomposition (characteristic 0): p = lc * prod f_i^i
// with the f_i monic, squarefree and pairwise coprime. Returns pairs
// (factor, multiplicity) sorted by (degree, multiplicity).
template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decompose(const Poly<K>& p) {
    if (p.zero()) throw Error("squarefree_decompose: zero input");
    std::vector<std::pair<Poly<K>, int>> out;
    if (p.degree() == 0) return out;
    Poly<K> f = monic(p);
    Poly<K> fp = f.derivative();
    Poly<K> u = poly_gcd(f, fp);
    Poly<K> b = f / u;
    Poly<K> cpoly = fp / u;
    Poly<K> d = cpoly - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly<K> a = poly_gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = b / a;
        cpoly = d / a;
        d = cpoly - b.derivative();
        ++i;
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree())
            return x.first.degree() < y.first.degree();
        return x.second < y.second;
    });
    return out;
}

// Sylvester resultant via the Euclidean remainder sequence:
// res(A,B) = lc(B)^{deg A - deg R} (-1)^{deg A deg B} res(B, R), R = A mod B.
template <class K>
K resultant(Poly<K> A, Poly<K> B) {
    if (A.degree() <= 0 && B.degree() <= 0)
        throw Error("resultant: both arguments constant");
    if (A.zero() || B.zero()) return K{};
    bool neg = false;
    if (A.degree() < B.degree()) {
        if ((A.degree() * B.degree()) % 2) neg = !neg;
        std::swap(A, B);
    }
    K acc(1);
    while (true) {
        if (B.degree() == 0) {
            for (int i = 0; i < A.degree(); ++i) acc = acc * B.lc();
            break;
        }
        Poly<K> R = divmod(A, B).second;
        if (R.zero()) return K{};  // common factor
        if ((A.degree() * B.degree()) % 2) neg = !neg;
        int drop = A.degree() - R.degree();
        for (int i = 0; i < drop; ++i) acc = acc * B.lc();
        A = std::move(B);
        B = std::move(R);
    }
    return neg ? -acc : acc;
}

// --- rational function field ----------------------------------------------

// Fraction field K(t) of Poly<K>; denominator kept monic and the fraction
// reduced. This is the coefficient field used to analyse one-parameter
// polynomial families exactly.
template <class K>
struct RatFunc {
    Poly<K> num;
    Poly<K> den;  // monic, nonzero

    RatFunc() : den(Poly<K>(K(1))) {}
    RatFunc(K k) : num(Poly<K>(std::move(k))), den(Poly<K>(K(1))) {}
    RatFunc(long n) : num(Poly<K>(K(n))), den(Poly<K>(K(1))) {}
    RatFunc(Poly<K> n) : num(std::move(n)), den(Poly<K>(K(1))) {}
    RatFunc(Poly<K> n, Poly<K> d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        if (den.zero()) throw InternalError("RatFunc: zero denominator");
        if (num.zero()) {
            den = Poly<K>(K(1));
            return;
        }
        Poly<K> g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
        K ln = den.lc();
        if (!is_zero(ln - K(1))) {
            K inv = K(1) / ln;
            num = num * inv;
            den = den * inv;
        }
    }

    bool zero() const { return num.zero(); }
    bool is_polynomial() const { return den.degree() == 0; }

    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num, a.den); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.zero()) throw InternalError("RatFunc: division by zero");
        return RatFunc(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return (a - b).zero();
    }
};

template <class K>
inline bool is_zero(const RatFunc<K>& f) {
    return f.zero();
}

using QPoly = Poly<GaussRat>;      // exact univariate polynomial
using QRatFunc = RatFunc<GaussRat>;
using FPoly = Poly<RatFunc<GaussRat>>;  // polynomial over Q(i)(t)
using CPoly = Poly<Coeff>;         // polynomial with exact-or-ball entries

// Lift a Q(i)[t]-coefficient polynomial (given z-major) into Q(i)(t)[z].
inline FPoly lift_to_field(const Poly<QPoly>& p) {
    FPoly r;
    r.c.reserve(p.c.size());
    for (const auto& ci : p.c) r.c.push_back(QRatFunc(ci));
    r.normalize();
    return r;
}

// Clear denominators of a Q(i)(t)[z] polynomial: returns a z-major
// polynomial with Q(i)[t] coefficients equal to p up to a t-unit, made
// primitive (no common t-factor) with monic content normalization.
inline Poly<QPoly> clear_denominators(const FPoly& p) {
    QPoly l(GaussRat(1));
    for (const auto& ci : p.c)
        if (!ci.zero()) l = l * ci.den / poly_gcd(l, ci.den);
    Poly<QPoly> r;
    r.c.reserve(p.c.size());
    for (const auto& ci : p.c) {
        QPoly q = ci.num * (l / ci.den);
        r.c.push_back(q);
    }
    r.normalize();
    // primitive part: divide by the gcd of all coefficients
    QPoly g;
    for (const auto& ci : r.c)
        if (!ci.zero()) g = g.zero() ? monic(ci) : poly_gcd(g, ci);
    if (!g.zero() && g.degree() > 0)
        for (auto& ci : r.c) ci = ci / g;
    return r;
}

}  // namespace puiseux

#endif
