#ifndef PUISEUX_GAUSS_RATIONAL_HPP
#define PUISEUX_GAUSS_RATIONAL_HPP

#include <string>

#include "puiseux/errors.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

// Element of Q(i): the exact coefficient field. Closed under the four
// field operations; equality is decidable.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }
    Rat norm() const { return re * re + im * im; }  // |z|^2

    friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }
    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re + b.re, a.im + b.im);
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re - b.re, a.im - b.im);
    }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        if (b.is_zero()) throw InternalError("GaussRat: division by zero");
        Rat n = b.norm();
        return GaussRat((a.re * b.re + a.im * b.im) / n,
                        (a.im * b.re - a.re * b.im) / n);
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    // Lexicographic (re, im) order; used only for deterministic output.
    friend bool lex_less(const GaussRat& a, const GaussRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::string str() const {
        if (sgn(im) == 0) return re.get_str();
        std::string s;
        if (sgn(re) != 0) s += re.get_str();
        if (sgn(im) > 0 && !s.empty()) s += "+";
        if (im == -1)
            s += "-i";
        else if (im == 1)
            s += "i";
        else
            s += im.get_str() + "*i";
        return s;
    }
};

inline bool is_zero(const GaussRat& g) { return g.is_zero(); }

// i^k for k mod 4; the exact root-of-unity powers used when a series has
// Puiseux multiplicity 1, 2 or 4.
inline GaussRat i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return GaussRat(Rat(1));
        case 1: return GaussRat::i();
        case 2: return GaussRat(Rat(-1));
        default: return GaussRat(Rat(0), Rat(-1));
    }
}

}  // namespace puiseux

#endif
