#ifndef PUISEUX_BALL_HPP
#define PUISEUX_BALL_HPP

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "puiseux/errors.hpp"
#include "puiseux/gauss_rational.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

constexpr mpfr_prec_t kDefaultPrec = 128;
constexpr mpfr_prec_t kMaxPrec = 4096;

// Value-semantic mpfr_t wrapper.
class Mpf {
  public:
    explicit Mpf(mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Mpf(const Mpf& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpf(Mpf&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mpf& operator=(const Mpf& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpf& operator=(Mpf&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpf() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  private:
    mpfr_t v_;
};

namespace detail {

// After an inexact midpoint operation, widen `rad` by one ulp of `x`.
inline void bump_ulp(mpfr_t rad, mpfr_srcptr x, int ternary) {
    if (ternary == 0 || mpfr_zero_p(x)) return;
    mpfr_t ulp;
    mpfr_init2(ulp, 32);
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

inline std::string mpfr_str(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return "0";
    char* s = nullptr;
    mpfr_asprintf(&s, "%.12Rg", x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace detail

// Closed real interval [lo, hi] with outward-rounded endpoints. Used for
// magnitudes, the series metric, and certification bounds.
class RealBall {
  public:
    explicit RealBall(mpfr_prec_t prec = kDefaultPrec) : lo_(prec), hi_(prec) {}

    static RealBall from_rat(const Rat& q, mpfr_prec_t prec = kDefaultPrec) {
        RealBall b(prec);
        mpfr_set_q(b.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(b.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
        return b;
    }
    static RealBall point(double x, mpfr_prec_t prec = kDefaultPrec) {
        RealBall b(prec);
        mpfr_set_d(b.lo_.get(), x, MPFR_RNDD);
        mpfr_set_d(b.hi_.get(), x, MPFR_RNDU);
        return b;
    }
    static RealBall from_endpoints(Mpf lo, Mpf hi) {
        RealBall b(std::max(lo.prec(), hi.prec()));
        b.lo_ = std::move(lo);
        b.hi_ = std::move(hi);
        return b;
    }

    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }
    mpfr_prec_t prec() const { return lo_.prec(); }

    friend RealBall operator+(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend RealBall operator-(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }

    // Product of intervals; general sign handling via the four corner
    // products.
    friend RealBall operator*(const RealBall& a, const RealBall& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        RealBall r(p);
        Mpf t(p), best_lo(p), best_hi(p);
        bool first = true;
        mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
        mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
        for (auto x : as)
            for (auto y : bs) {
                mpfr_mul(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t.get(), best_lo.get()) < 0)
                    mpfr_set(best_lo.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t.get(), best_hi.get()) > 0)
                    mpfr_set(best_hi.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        r.lo_ = best_lo;
        r.hi_ = best_hi;
        return r;
    }

    // Division, defined only when the divisor is strictly positive.
    friend RealBall operator/(const RealBall& a, const RealBall& b) {
        if (mpfr_sgn(b.lo_.get()) <= 0)
            throw AmbiguousZeroError("RealBall: division by interval touching 0");
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        RealBall r(p);
        mpfr_div(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_div(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }

    // sqrt of a nonnegative interval (lower endpoint clamped to 0).
    RealBall sqrt() const {
        RealBall r(prec());
        if (mpfr_sgn(lo_.get()) <= 0)
            mpfr_set_zero(r.lo_.get(), 1);
        else
            mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    // 2^q for rational q.
    static RealBall pow2(const Rat& q, mpfr_prec_t prec = kDefaultPrec) {
        RealBall e = from_rat(q, prec);
        RealBall r(prec);
        mpfr_exp2(r.lo_.get(), e.lo_.get(), MPFR_RNDD);
        mpfr_exp2(r.hi_.get(), e.hi_.get(), MPFR_RNDU);
        return r;
    }

    bool contains_zero() const {
        return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
    }
    bool definitely_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool definitely_less(const RealBall& o) const {
        return mpfr_cmp(hi_.get(), o.lo_.get()) < 0;
    }
    bool contains(const Rat& q) const {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 &&
               mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }

    double width() const {
        Mpf w(prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return mpfr_get_d(w.get(), MPFR_RNDU);
    }
    double mid_d() const {
        Mpf m(prec());
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return mpfr_get_d(m.get(), MPFR_RNDN);
    }

    std::string str() const {
        return "[" + detail::mpfr_str(lo_.get()) + ", " + detail::mpfr_str(hi_.get()) + "]";
    }

  private:
    Mpf lo_, hi_;
};

// Complex disk |z - mid| <= rad with outward-rounded arithmetic: the result
// disk of every operation contains all exact results of points of the
// operand disks.
class CBall {
  public:
    explicit CBall(mpfr_prec_t prec = kDefaultPrec)
        : re_(prec), im_(prec), rad_(prec) {}

    static CBall from_gauss(const GaussRat& g, mpfr_prec_t prec = kDefaultPrec) {
        CBall b(prec);
        int t1 = mpfr_set_q(b.re_.get(), g.re.get_mpq_t(), MPFR_RNDN);
        int t2 = mpfr_set_q(b.im_.get(), g.im.get_mpq_t(), MPFR_RNDN);
        detail::bump_ulp(b.rad_.get(), b.re_.get(), t1);
        detail::bump_ulp(b.rad_.get(), b.im_.get(), t2);
        return b;
    }
    static CBall from_doubles(double re, double im, double rad,
                              mpfr_prec_t prec = kDefaultPrec) {
        CBall b(prec);
        mpfr_set_d(b.re_.get(), re, MPFR_RNDN);
        mpfr_set_d(b.im_.get(), im, MPFR_RNDN);
        mpfr_set_d(b.rad_.get(), rad, MPFR_RNDU);
        return b;
    }
    static CBall make(Mpf re, Mpf im, Mpf rad) {
        CBall b(std::max(re.prec(), im.prec()));
        b.re_ = std::move(re);
        b.im_ = std::move(im);
        b.rad_ = std::move(rad);
        return b;
    }

    mpfr_srcptr re() const { return re_.get(); }
    mpfr_srcptr im() const { return im_.get(); }
    mpfr_srcptr rad() const { return rad_.get(); }
    mpfr_prec_t prec() const { return re_.prec(); }

    double re_d() const { return mpfr_get_d(re_.get(), MPFR_RNDN); }
    double im_d() const { return mpfr_get_d(im_.get(), MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

    CBall at_prec(mpfr_prec_t p) const {
        CBall b(p);
        int t1 = mpfr_set(b.re_.get(), re_.get(), MPFR_RNDN);
        int t2 = mpfr_set(b.im_.get(), im_.get(), MPFR_RNDN);
        mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
        detail::bump_ulp(b.rad_.get(), b.re_.get(), t1);
        detail::bump_ulp(b.rad_.get(), b.im_.get(), t2);
        return b;
    }

    friend CBall operator-(const CBall& a) {
        CBall r = a;
        mpfr_neg(r.re_.get(), r.re_.get(), MPFR_RNDN);
        mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
        return r;
    }

    friend CBall operator+(const CBall& a, const CBall& b) {
        CBall r(std::max(a.prec(), b.prec()));
        int t1 = mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
        int t2 = mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        detail::bump_ulp(r.rad_.get(), r.re_.get(), t1);
        detail::bump_ulp(r.rad_.get(), r.im_.get(), t2);
        return r;
    }
    friend CBall operator-(const CBall& a, const CBall& b) { return a + (-b); }

    friend CBall operator*(const CBall& a, const CBall& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        CBall r(p);
        Mpf t1(p), t2(p);
        int s;
        // re = a.re*b.re - a.im*b.im
        s = mpfr_mul(t1.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), t1.get(), s);
        s = mpfr_mul(t2.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), t2.get(), s);
        s = mpfr_sub(r.re_.get(), t1.get(), t2.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), r.re_.get(), s);
        // im = a.re*b.im + a.im*b.re
        s = mpfr_mul(t1.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), t1.get(), s);
        s = mpfr_mul(t2.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), t2.get(), s);
        s = mpfr_add(r.im_.get(), t1.get(), t2.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), r.im_.get(), s);
        // rad += |a.mid|*b.rad + |b.mid|*a.rad + a.rad*b.rad
        Mpf ma(p), mb(p), acc(p);
        mpfr_hypot(ma.get(), a.re_.get(), a.im_.get(), MPFR_RNDU);
        mpfr_hypot(mb.get(), b.re_.get(), b.im_.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), ma.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), acc.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), mb.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), acc.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), acc.get(), MPFR_RNDU);
        return r;
    }

    // Reciprocal; requires the disk to exclude 0.
    CBall inverse() const {
        mpfr_prec_t p = prec();
        Mpf mlo(p);
        mpfr_hypot(mlo.get(), re_.get(), im_.get(), MPFR_RNDD);
        if (mpfr_cmp(mlo.get(), rad_.get()) <= 0)
            throw AmbiguousZeroError("CBall: inverse of a disk containing 0");
        CBall r(p);
        // center: conj(mid) / |mid|^2
        Mpf n(p), t(p);
        int s;
        s = mpfr_mul(n.get(), re_.get(), re_.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), n.get(), s);
        s = mpfr_mul(t.get(), im_.get(), im_.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), t.get(), s);
        s = mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), n.get(), s);
        s = mpfr_div(r.re_.get(), re_.get(), n.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), r.re_.get(), s);
        s = mpfr_div(r.im_.get(), im_.get(), n.get(), MPFR_RNDN);
        mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
        detail::bump_ulp(r.rad_.get(), r.im_.get(), s);
        // The center rounding bumps above are relative to the inverse's
        // magnitude; scale is harmless since they only widen.
        // rad': rad / (|mid|_lo * (|mid|_lo - rad))
        Mpf d(p), rr(p);
        mpfr_sub(d.get(), mlo.get(), rad_.get(), MPFR_RNDD);
        mpfr_mul(d.get(), d.get(), mlo.get(), MPFR_RNDD);
        mpfr_div(rr.get(), rad_.get(), d.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), rr.get(), MPFR_RNDU);
        return r;
    }

    friend CBall operator/(const CBall& a, const CBall& b) { return a * b.inverse(); }

    CBall pow(unsigned k) const {
        CBall r = from_gauss(GaussRat(1), prec());
        CBall base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    // |z| over the disk as a real interval.
    RealBall abs() const {
        mpfr_prec_t p = prec();
        Mpf lo(p), hi(p);
        mpfr_hypot(lo.get(), re_.get(), im_.get(), MPFR_RNDD);
        mpfr_sub(lo.get(), lo.get(), rad_.get(), MPFR_RNDD);
        if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
        mpfr_hypot(hi.get(), re_.get(), im_.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), rad_.get(), MPFR_RNDU);
        return RealBall::from_endpoints(std::move(lo), std::move(hi));
    }

    bool definitely_nonzero() const {
        Mpf mlo(prec());
        mpfr_hypot(mlo.get(), re_.get(), im_.get(), MPFR_RNDD);
        return mpfr_cmp(mlo.get(), rad_.get()) > 0;
    }
    bool may_contain_zero() const { return !definitely_nonzero(); }

    bool contains(const GaussRat& g) const {
        mpfr_prec_t p = prec();
        Mpf dr(p), di(p), d(p);
        mpfr_t qr, qi;
        mpfr_init2(qr, p);
        mpfr_init2(qi, p);
        mpfr_set_q(qr, g.re.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(qi, g.im.get_mpq_t(), MPFR_RNDN);
        mpfr_sub(dr.get(), re_.get(), qr, MPFR_RNDA);
        mpfr_sub(di.get(), im_.get(), qi, MPFR_RNDA);
        mpfr_clear(qr);
        mpfr_clear(qi);
        mpfr_hypot(d.get(), dr.get(), di.get(), MPFR_RNDU);
        // Two extra ulps absorb the rational-to-float conversions.
        detail::bump_ulp(d.get(), d.get(), 1);
        detail::bump_ulp(d.get(), d.get(), 1);
        return mpfr_cmp(d.get(), rad_.get()) <= 0;
    }

    friend bool disjoint(const CBall& a, const CBall& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        Mpf dr(p), di(p), d(p), rs(p);
        mpfr_sub(dr.get(), a.re_.get(), b.re_.get(), MPFR_RNDZ);
        mpfr_sub(di.get(), a.im_.get(), b.im_.get(), MPFR_RNDZ);
        mpfr_hypot(d.get(), dr.get(), di.get(), MPFR_RNDD);
        detail::bump_ulp(rs.get(), d.get(), 1);  // absorb RNDZ midpoint error
        mpfr_add(rs.get(), rs.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(rs.get(), rs.get(), b.rad_.get(), MPFR_RNDU);
        return mpfr_cmp(d.get(), rs.get()) > 0;
    }

    // True when rad < 2^e.
    bool radius_below_2exp(long e) const {
        Mpf bound(32);
        mpfr_set_ui_2exp(bound.get(), 1, e, MPFR_RNDD);
        return mpfr_cmp(rad_.get(), bound.get()) < 0;
    }

    // Deterministic midpoint ordering (lexicographic re, im).
    friend bool mid_lex_less(const CBall& a, const CBall& b) {
        int c = mpfr_cmp(a.re_.get(), b.re_.get());
        if (c != 0) return c < 0;
        return mpfr_cmp(a.im_.get(), b.im_.get()) < 0;
    }

    std::string str() const {
        std::string s = "(" + detail::mpfr_str(re_.get());
        if (!mpfr_zero_p(im_.get())) s += (mpfr_sgn(im_.get()) >= 0 ? "+" : "") + detail::mpfr_str(im_.get()) + "i";
        s += " ~ " + detail::mpfr_str(rad_.get()) + ")";
        return s;
    }

  private:
    Mpf re_, im_, rad_;
};

}  // namespace puiseux

#endif
