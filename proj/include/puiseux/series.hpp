#ifndef PUISEUX_SERIES_HPP
#define PUISEUX_SERIES_HPP

#include <map>
#include <string>
#include <vector>

#include "puiseux/coeff.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/poly.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

// Zero-status hooks for series coefficients. A coefficient ring used inside
// Series must tell exact zeros from ball maybe-zeros.
inline ZeroStatus zero_status_of(const Coeff& c) { return c.zero_status(); }
inline ZeroStatus zero_status_of(const Poly<Coeff>& p) {
    bool maybe = false;
    for (const auto& e : p.c) {
        switch (e.zero_status()) {
            case ZeroStatus::kNonZero: return ZeroStatus::kNonZero;
            case ZeroStatus::kMaybeZero: maybe = true; break;
            case ZeroStatus::kZero: break;
        }
    }
    return maybe ? ZeroStatus::kMaybeZero : ZeroStatus::kZero;
}

// True if every component is a zero-containing disk of radius < 2^e
// (exact zeros allowed). Such coefficients may be dropped after an
// escalation per the Newton-polygon dot policy.
inline bool tiny_maybe_zero(const Coeff& c, long e) {
    if (c.is_exact()) return c.exact().is_zero();
    return c.ball().may_contain_zero() && c.ball().radius_below_2exp(e);
}
inline bool tiny_maybe_zero(const Poly<Coeff>& p, long e) {
    for (const auto& entry : p.c)
        if (!tiny_maybe_zero(entry, e)) return false;
    return true;
}

// Truncated fractional power series sum a_i y^{e_i}, e_i strictly
// increasing rationals, together with a truncation bound: exponents
// >= trunc are unknown, everything below is stored completely.
// The coefficient ring C is Coeff for values and Poly<Coeff> (polynomials
// in the deformation parameter t) for one-parameter families.
template <class C>
class Series {
  public:
    struct Term {
        Rat exp;
        C coeff;
    };

    Series() : trunc_(ExtRat::infinity()) {}

    static Series zero() { return Series(); }

    static Series monomial(const Rat& e, C c, ExtRat trunc = ExtRat::infinity()) {
        Series s;
        s.trunc_ = trunc;
        if (!is_zero(c) && ExtRat(e) < trunc) s.t_.push_back(Term{e, std::move(c)});
        return s;
    }

    static Series from_terms(std::vector<Term> terms, ExtRat trunc = ExtRat::infinity()) {
        std::map<Rat, C> acc;
        for (auto& t : terms) {
            auto it = acc.find(t.exp);
            if (it == acc.end())
                acc.emplace(t.exp, std::move(t.coeff));
            else
                it->second = it->second + t.coeff;
        }
        Series s;
        s.trunc_ = trunc;
        for (auto& [e, c] : acc)
            if (!is_zero(c) && ExtRat(e) < trunc) s.t_.push_back(Term{e, std::move(c)});
        return s;
    }

    const std::vector<Term>& terms() const { return t_; }
    const ExtRat& trunc() const { return trunc_; }
    bool empty() const { return t_.empty(); }

    // Exactly the zero series (no unknown tail).
    bool known_zero() const { return t_.empty() && trunc_.is_infinite(); }

    // Lower bound for the order: everything below is known absent.
    ExtRat order_lower() const {
        if (!t_.empty()) return ExtRat(t_.front().exp);
        return trunc_;
    }

    // The order O_y: first definitely nonzero exponent; +infinity for the
    // known-zero series. Throws when a leading ball coefficient cannot be
    // decided or the truncation hides the answer.
    ExtRat order() const {
        for (const auto& t : t_) {
            switch (zero_status_of(t.coeff)) {
                case ZeroStatus::kNonZero: return ExtRat(t.exp);
                case ZeroStatus::kMaybeZero:
                    throw AmbiguousZeroError(
                        "series order: leading coefficient is a zero-containing ball");
                case ZeroStatus::kZero: break;
            }
        }
        if (trunc_.is_infinite()) return ExtRat::infinity();
        throw TruncationError("series order: zero to stored depth, truncation too short");
    }

    // True if the series provably vanishes to order >= e: every stored term
    // below e contains zero, and e does not exceed the stored depth.
    bool vanishes_to(const ExtRat& e) const {
        if (trunc_ < e) return false;
        for (const auto& t : t_) {
            if (!(ExtRat(t.exp) < e)) break;
            if (zero_status_of(t.coeff) == ZeroStatus::kNonZero) return false;
        }
        return true;
    }

    const C& leading_coeff() const {
        if (t_.empty()) throw InternalError("series: leading coefficient of empty series");
        return t_.front().coeff;
    }

    C coeff_at(const Rat& e) const {
        for (const auto& t : t_) {
            if (t.exp == e) return t.coeff;
            if (t.exp > e) break;
        }
        if (!(ExtRat(e) < trunc_))
            throw TruncationError("series: coefficient beyond truncation");
        return C{};
    }

    bool has_term_at(const Rat& e) const {
        for (const auto& t : t_) {
            if (t.exp == e) return true;
            if (t.exp > e) break;
        }
        return false;
    }

    friend Series operator-(const Series& a) {
        Series r = a;
        for (auto& t : r.t_) t.coeff = -t.coeff;
        return r;
    }

    friend Series operator+(const Series& a, const Series& b) {
        std::vector<Term> ts;
        ts.reserve(a.t_.size() + b.t_.size());
        for (const auto& t : a.t_) ts.push_back(t);
        for (const auto& t : b.t_) ts.push_back(t);
        return from_terms(std::move(ts), min(a.trunc_, b.trunc_));
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    // Product. The result is known below min(ord(a)+trunc(b), ord(b)+trunc(a)):
    // unknown tails of one factor meet the leading part of the other there.
    friend Series operator*(const Series& a, const Series& b) {
        ExtRat tr = ExtRat::infinity();
        if (!a.trunc_.is_infinite() || !b.trunc_.is_infinite()) {
            tr = min(a.order_lower() + b.trunc_, b.order_lower() + a.trunc_);
        }
        std::vector<Term> ts;
        ts.reserve(a.t_.size() * b.t_.size());
        for (const auto& x : a.t_)
            for (const auto& y : b.t_)
                ts.push_back(Term{x.exp + y.exp, x.coeff * y.coeff});
        return from_terms(std::move(ts), tr);
    }

    friend Series operator*(const Series& a, const C& k) {
        if (is_zero(k)) return Series::zero();
        Series r = a;
        for (auto& t : r.t_) t.coeff = t.coeff * k;
        r.renormalize();
        return r;
    }

    Series shifted_by(const Rat& e) const {  // multiply by y^e
        Series r = *this;
        for (auto& t : r.t_) t.exp = t.exp + e;
        if (r.trunc_.is_finite()) r.trunc_ = ExtRat(r.trunc_.value() + e);
        return r;
    }

    Series pow(unsigned k) const {
        Series r = monomial(Rat(0), C(1));
        Series base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            if (k >>= 1u) base = base * base;
        }
        return r;
    }

    // Weaken knowledge: forget everything at or above T.
    Series truncated(const ExtRat& T) const {
        Series r = *this;
        r.trunc_ = min(r.trunc_, T);
        while (!r.t_.empty() && !(ExtRat(r.t_.back().exp) < r.trunc_)) r.t_.pop_back();
        return r;
    }

    // Drop stored terms that are tiny zero-containing balls (radius below
    // 2^tiny_exp). Applied before polygon construction: hull membership
    // must be decided, and a residual ball like (sqrt2)^2 - 2 is treated
    // as the zero it provably nearly is.
    Series cleaned(long tiny_exp) const {
        Series r;
        r.trunc_ = trunc_;
        for (const auto& t : t_)
            if (!tiny_maybe_zero(t.coeff, tiny_exp)) r.t_.push_back(t);
        return r;
    }

    // Delete all terms with exponent strictly above h (keeping h itself).
    // This is the canonical-coordinate truncation; the result is a fully
    // known finite series, so requires the stored depth to reach past h.
    Series deleted_above(const Rat& h) const {
        if (!(ExtRat(h) < trunc_))
            throw TruncationError("series: cannot delete above, truncation too short");
        Series r;
        r.trunc_ = ExtRat::infinity();
        for (const auto& t : t_)
            if (t.exp <= h) r.t_.push_back(t);
        return r;
    }

    // Reduced common denominator N of the stored exponents.
    Int multiplicity() const {
        Int n = 1;
        for (const auto& t : t_) n = lcm_int(n, rat_den(t.exp));
        return n;
    }

    friend bool structurally_equal(const Series& a, const Series& b) {
        if (!(a.trunc_ == b.trunc_) || a.t_.size() != b.t_.size()) return false;
        for (size_t i = 0; i < a.t_.size(); ++i) {
            if (a.t_[i].exp != b.t_[i].exp) return false;
            if (!is_zero(a.t_[i].coeff - b.t_[i].coeff)) return false;
        }
        return true;
    }

  private:
    void renormalize() {
        std::vector<Term> keep;
        keep.reserve(t_.size());
        for (auto& t : t_)
            if (!is_zero(t.coeff) && ExtRat(t.exp) < trunc_) keep.push_back(std::move(t));
        t_ = std::move(keep);
    }

    std::vector<Term> t_;
    ExtRat trunc_;
};

using PuiseuxSeries = Series<Coeff>;
using TPoly = Poly<Coeff>;        // polynomial in the deformation parameter t
using TSeries = Series<TPoly>;    // family of series, coefficients in t

inline const Rat& as_rat(const ExtRat& e, const char* what) {
    if (!e.is_finite()) throw InternalError(std::string(what) + ": unexpected +infinity");
    return e.value();
}

// --- conjugation ------------------------------------------------------------

// theta^j for theta = exp(2 pi i / n): exact when the angle lands on a
// quarter turn, a certified ball otherwise.
inline Coeff root_of_unity_power(long n, long j, mpfr_prec_t prec = kDefaultPrec) {
    j = ((j % n) + n) % n;
    if (j == 0) return Coeff(GaussRat(1));
    if (2 * j == n) return Coeff(GaussRat(Rat(-1)));
    if (4 * j == n) return Coeff(GaussRat::i());
    if (4 * j == 3 * n) return Coeff(GaussRat(Rat(0), Rat(-1)));
    Mpf angle(prec), c(prec), s(prec), r(prec);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_si(angle.get(), angle.get(), 2 * j, MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), n, MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    // 4 ulps absorb pi, the scaling and the sin/cos roundings
    mpfr_set_ui_2exp(r.get(), 4, -static_cast<long>(prec), MPFR_RNDU);
    return Coeff(CBall::make(std::move(c), std::move(s), std::move(r)));
}

// The N conjugate series y^{1/N} -> theta^k y^{1/N}, k = 0..N-1.
inline std::vector<PuiseuxSeries> conjugates(const PuiseuxSeries& a,
                                             mpfr_prec_t prec = kDefaultPrec) {
    long n = a.multiplicity().get_si();
    std::vector<PuiseuxSeries> out;
    out.reserve(n);
    for (long k = 0; k < n; ++k) {
        std::vector<PuiseuxSeries::Term> ts;
        ts.reserve(a.terms().size());
        for (const auto& t : a.terms()) {
            // exponent p/q with q | n: numerator over denominator n
            Int num = rat_num(t.exp) * (n / rat_den(t.exp));
            long j = mpz_class(num % n).get_si();
            ts.push_back({t.exp, t.coeff * root_of_unity_power(n, k * j, prec)});
        }
        out.push_back(PuiseuxSeries::from_terms(std::move(ts), a.trunc()));
    }
    return out;
}

// --- metric -----------------------------------------------------------------

// |alpha| = sum 2^{-e_i} |a_i| (1+|a_i|)^{-1} over the stored terms, as a
// certified enclosure.
inline RealBall metric_norm(const PuiseuxSeries& a, mpfr_prec_t prec = kDefaultPrec) {
    RealBall sum(prec);  // [0,0]
    RealBall one = RealBall::from_rat(Rat(1), prec);
    for (const auto& t : a.terms()) {
        RealBall mag = t.coeff.abs(prec);
        RealBall w = RealBall::pow2(-t.exp, prec);
        sum = sum + w * (mag / (one + mag));
    }
    return sum;
}

// --- contact order ----------------------------------------------------------

// O_y(a - b). For identical representations returns +infinity (the contact
// of a point with itself); if the difference vanishes to the full stored
// depth without the representations being identical, the truncation is too
// short to answer and we refuse to guess.
inline ExtRat contact_order_series(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    PuiseuxSeries d = a - b;
    for (const auto& t : d.terms()) {
        switch (zero_status_of(t.coeff)) {
            case ZeroStatus::kNonZero: return ExtRat(t.exp);
            case ZeroStatus::kMaybeZero:
                throw AmbiguousZeroError("contact order: ball difference contains zero");
            case ZeroStatus::kZero: break;
        }
    }
    if (d.trunc().is_infinite()) return ExtRat::infinity();
    if (structurally_equal(a, b)) return ExtRat::infinity();
    throw TruncationError("contact order: series agree to stored depth");
}

// Curve-level contact order: max over the conjugates of b.
inline ExtRat contact_order_curve(const PuiseuxSeries& a, const PuiseuxSeries& b,
                                  mpfr_prec_t prec = kDefaultPrec) {
    ExtRat best(Rat(0));
    bool first = true;
    for (const auto& bc : conjugates(b, prec)) {
        ExtRat c = contact_order_series(a, bc);
        if (first || best < c) best = c;
        first = false;
        if (best.is_infinite()) break;
    }
    return best;
}

// --- Puiseux characteristic pairs --------------------------------------------

// The ordered exponents whose reduced denominator enlarges the running
// denominator lcm; empty for an integral series.
inline std::vector<Rat> puiseux_pairs(const PuiseuxSeries& a) {
    std::vector<Rat> out;
    Int run = 1;
    for (const auto& t : a.terms()) {
        Int den = rat_den(t.exp);
        Int l = lcm_int(run, den);
        if (l != run) {
            out.push_back(t.exp);
            run = l;
        }
    }
    return out;
}

// --- rendering ---------------------------------------------------------------

inline std::string exp_str(const Rat& e) {
    if (rat_den(e) == 1) return e.get_str();
    return "(" + e.get_str() + ")";
}

template <class C>
std::string coeff_str(const C& c);
template <>
inline std::string coeff_str<Coeff>(const Coeff& c) {
    return c.str();
}
template <>
inline std::string coeff_str<TPoly>(const TPoly& p) {
    if (p.zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        if (is_zero(p.at(i))) continue;
        if (!s.empty()) s += " + ";
        std::string cs = p.at(i).str();
        if (i == 0) {
            s += cs;
        } else {
            std::string base = i == 1 ? "t" : "t^" + std::to_string(i);
            if (cs == "1")
                s += base;
            else if (cs == "-1")
                s += "-" + base;
            else
                s += (cs.find_first_of("+-", 1) != std::string::npos ? "(" + cs + ")" : cs) +
                     "*" + base;
        }
    }
    return s;
}

template <class C>
std::string series_str(const Series<C>& a) {
    std::string s;
    for (const auto& t : a.terms()) {
        std::string cs = coeff_str<C>(t.coeff);
        if (!s.empty()) {
            if (cs.size() > 1 && cs[0] == '-' &&
                cs.find_first_of("+-", 1) == std::string::npos) {
                s += " - ";
                cs = cs.substr(1);
            } else {
                s += " + ";
            }
        }
        bool composite = cs.find_first_of("+-", 1) != std::string::npos || cs.find('t') != std::string::npos;
        if (sgn(t.exp) == 0) {
            s += composite ? "(" + cs + ")" : cs;
        } else {
            std::string base = t.exp == 1 ? "y" : "y^" + exp_str(t.exp);
            if (cs == "1")
                s += base;
            else if (cs == "-1")
                s += "-" + base;
            else
                s += (composite ? "(" + cs + ")" : cs) + "*" + base;
        }
    }
    if (s.empty()) s = "0";
    if (a.trunc().is_finite()) s += " + O(y^" + exp_str(a.trunc().value()) + ")";
    return s;
}

}  // namespace puiseux

#endif
