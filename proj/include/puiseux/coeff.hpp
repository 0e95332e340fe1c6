#ifndef PUISEUX_COEFF_HPP
#define PUISEUX_COEFF_HPP

#include <string>
#include <variant>

#include "puiseux/ball.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/gauss_rational.hpp"

namespace puiseux {

enum class ZeroStatus { kZero, kNonZero, kMaybeZero };

// A coefficient: exact Gaussian rational, or a certified complex disk.
// Mixed arithmetic promotes the exact side to a ball; an exact value is
// never degraded implicitly.
class Coeff {
  public:
    Coeff() : v_(GaussRat()) {}
    Coeff(GaussRat g) : v_(std::move(g)) {}
    Coeff(CBall b) : v_(std::move(b)) {}
    Coeff(long n) : v_(GaussRat(n)) {}
    Coeff(Rat r) : v_(GaussRat(std::move(r))) {}

    bool is_exact() const { return std::holds_alternative<GaussRat>(v_); }
    const GaussRat& exact() const {
        if (!is_exact()) throw InternalError("Coeff: not exact");
        return std::get<GaussRat>(v_);
    }
    const CBall& ball() const {
        if (is_exact()) throw InternalError("Coeff: not a ball");
        return std::get<CBall>(v_);
    }

    CBall to_ball(mpfr_prec_t prec = kDefaultPrec) const {
        if (is_exact()) return CBall::from_gauss(exact(), prec);
        return ball().prec() >= prec ? ball() : ball().at_prec(prec);
    }

    ZeroStatus zero_status() const {
        if (is_exact()) return exact().is_zero() ? ZeroStatus::kZero : ZeroStatus::kNonZero;
        return ball().definitely_nonzero() ? ZeroStatus::kNonZero : ZeroStatus::kMaybeZero;
    }
    bool is_exact_zero() const { return is_exact() && exact().is_zero(); }
    bool definitely_nonzero() const { return zero_status() == ZeroStatus::kNonZero; }

    friend Coeff operator-(const Coeff& a) {
        if (a.is_exact()) return Coeff(-a.exact());
        return Coeff(-a.ball());
    }

#define PUISEUX_COEFF_BINOP(op)                                               \
    friend Coeff operator op(const Coeff& a, const Coeff& b) {                \
        if (a.is_exact() && b.is_exact()) return Coeff(a.exact() op b.exact()); \
        mpfr_prec_t p = kDefaultPrec;                                         \
        if (!a.is_exact()) p = std::max(p, a.ball().prec());                  \
        if (!b.is_exact()) p = std::max(p, b.ball().prec());                  \
        return Coeff(a.to_ball(p) op b.to_ball(p));                           \
    }
    PUISEUX_COEFF_BINOP(+)
    PUISEUX_COEFF_BINOP(-)
    PUISEUX_COEFF_BINOP(*)
#undef PUISEUX_COEFF_BINOP

    friend Coeff operator/(const Coeff& a, const Coeff& b) {
        if (a.is_exact() && b.is_exact()) {
            if (b.exact().is_zero()) throw InternalError("Coeff: division by zero");
            return Coeff(a.exact() / b.exact());
        }
        mpfr_prec_t p = kDefaultPrec;
        if (!a.is_exact()) p = std::max(p, a.ball().prec());
        if (!b.is_exact()) p = std::max(p, b.ball().prec());
        return Coeff(a.to_ball(p) / b.to_ball(p));
    }

    Coeff& operator+=(const Coeff& b) { return *this = *this + b; }
    Coeff& operator-=(const Coeff& b) { return *this = *this - b; }
    Coeff& operator*=(const Coeff& b) { return *this = *this * b; }

    Coeff pow(unsigned k) const {
        Coeff r(GaussRat(1)), base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            if (k >>= 1u) base = base * base;
        }
        return r;
    }

    // Equality that is exact on Exact and disk-based on Ball: true means
    // provably equal only in the exact case; for balls it means the values
    // are compatible (not provably distinct).
    friend bool definitely_equal(const Coeff& a, const Coeff& b) {
        if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
        return false;
    }
    friend bool possibly_equal(const Coeff& a, const Coeff& b) {
        if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
        if (a.is_exact()) return b.ball().contains(a.exact());
        if (b.is_exact()) return a.ball().contains(b.exact());
        return !disjoint(a.ball(), b.ball());
    }

    RealBall abs(mpfr_prec_t prec = kDefaultPrec) const {
        if (is_exact()) {
            // sqrt of the exact norm |z|^2.
            return RealBall::from_rat(exact().norm(), prec).sqrt();
        }
        return ball().abs();
    }

    // Deterministic ordering for reports: exact before ball, then
    // lexicographic by value/midpoint.
    friend bool order_less(const Coeff& a, const Coeff& b) {
        if (a.is_exact() != b.is_exact()) return a.is_exact();
        if (a.is_exact()) return lex_less(a.exact(), b.exact());
        return mid_lex_less(a.ball(), b.ball());
    }

    std::string str() const { return is_exact() ? exact().str() : ball().str(); }

  private:
    std::variant<GaussRat, CBall> v_;
};

inline bool is_zero(const Coeff& c) { return c.is_exact_zero(); }

}  // namespace puiseux

#endif
