#ifndef PUISEUX_RATIONAL_HPP
#define PUISEUX_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "puiseux/errors.hpp"

namespace puiseux {

using Int = mpz_class;
using Rat = mpq_class;  // always canonical: den > 0, gcd(num, den) = 1

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int rat_num(const Rat& r) { return r.get_num(); }
inline Int rat_den(const Rat& r) { return r.get_den(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline Int lcm_int(const Int& a, const Int& b) {
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// floor(r) as an integer.
inline Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

// Rat extended with +infinity. Orders, heights and truncation bounds live
// here: the order of the zero series is +infinity, as is the Lojasiewicz
// exponent of a vertical edge.
class ExtRat {
  public:
    ExtRat() : finite_(true), v_(0) {}
    ExtRat(Rat v) : finite_(true), v_(std::move(v)) {}
    ExtRat(long v) : finite_(true), v_(v) {}

    static ExtRat infinity() {
        ExtRat e;
        e.finite_ = false;
        return e;
    }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    const Rat& value() const {
        if (!finite_) throw InternalError("ExtRat: value() of +infinity");
        return v_;
    }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
    friend bool operator<(const ExtRat& a, const ExtRat& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
    friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
    friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

    // Addition: infinity absorbs.
    friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return ExtRat(a.v_ + b.v_);
    }
    friend ExtRat operator+(const ExtRat& a, const Rat& b) { return a + ExtRat(b); }

    std::string str() const { return finite_ ? v_.get_str() : "inf"; }

  private:
    bool finite_;
    Rat v_;
};

inline ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
inline ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

}  // namespace puiseux

#endif
