#ifndef PUISEUX_POLY_ROOTS_HPP
#define PUISEUX_POLY_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "puiseux/ball.hpp"
#include "puiseux/coeff.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/poly.hpp"

namespace puiseux {

struct PolyRoot {
    Coeff value;       // exact when recognizably Gaussian rational
    int multiplicity;
};

namespace detail {

// Plain complex midpoint arithmetic used inside the Aberth iteration; all
// rigor comes from the ball certification afterwards.
struct MpC {
    Mpf re, im;
    explicit MpC(mpfr_prec_t p) : re(p), im(p) {}
};

inline void mpc_add(MpC& r, const MpC& a, const MpC& b) {
    mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}
inline void mpc_sub(MpC& r, const MpC& a, const MpC& b) {
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}
inline void mpc_mul(MpC& r, const MpC& a, const MpC& b) {
    mpfr_prec_t p = r.re.prec();
    Mpf t1(p), t2(p);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    Mpf nre(p);
    mpfr_sub(nre.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    r.re = std::move(nre);
}
inline void mpc_div(MpC& r, const MpC& a, const MpC& b) {
    mpfr_prec_t p = r.re.prec();
    Mpf n(p), t1(p), t2(p);
    mpfr_mul(t1.get(), b.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), b.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(n.get(), t1.get(), t2.get(), MPFR_RNDN);
    // (a * conj b) / n
    Mpf nre(p), nim(p);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(nre.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(nim.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div(r.re.get(), nre.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), nim.get(), n.get(), MPFR_RNDN);
}
inline double mpc_abs_d(const MpC& a) {
    Mpf h(53);
    mpfr_hypot(h.get(), a.re.get(), a.im.get(), MPFR_RNDU);
    return mpfr_get_d(h.get(), MPFR_RNDU);
}

// Simplest rational in [lo, hi] (continued-fraction walk).
inline std::optional<Rat> simplest_in_interval(Rat lo, Rat hi) {
    if (lo > hi) return std::nullopt;
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rat(0);
    if (sgn(hi) < 0) {
        auto r = simplest_in_interval(-hi, -lo);
        if (!r) return std::nullopt;
        return -*r;
    }
    // 0 < lo <= hi: walk the continued fraction
    Rat a = lo, b = hi;
    std::vector<Int> terms;
    for (int guard = 0; guard < 512; ++guard) {
        Int fa = rat_floor(a);
        Int fb = rat_floor(b);
        if (fa < fb) {
            terms.push_back(fa + 1);
            break;
        }
        terms.push_back(fa);
        Rat ra = a - Rat(fa);
        Rat rb = b - Rat(fb);
        if (sgn(ra) == 0) break;  // a itself is the simplest
        // recurse on reciprocals (swap)
        a = Rat(1) / rb;
        b = Rat(1) / ra;
    }
    // rebuild the fraction
    Rat v(terms.back());
    for (size_t i = terms.size() - 1; i-- > 0;) v = Rat(terms[i]) + Rat(1) / v;
    if (v < lo || v > hi) return std::nullopt;
    return v;
}

inline std::optional<Rat> snap_real(mpfr_srcptr mid, mpfr_srcptr rad) {
    mpq_class m, r;
    mpfr_get_q(m.get_mpq_t(), mid);
    mpfr_get_q(r.get_mpq_t(), rad);
    return simplest_in_interval(Rat(m - r), Rat(m + r));
}

}  // namespace detail

// Attempt to recognize the disk as a Gaussian rational: the simplest
// rational in each coordinate interval. Only trustworthy when the radius
// is small; callers decide what to do with the candidate.
inline std::optional<GaussRat> snap_to_gauss(const CBall& b) {
    auto re = detail::snap_real(b.re(), b.rad());
    if (!re) return std::nullopt;
    auto im = detail::snap_real(b.im(), b.rad());
    if (!im) return std::nullopt;
    return GaussRat(*re, *im);
}

namespace detail {

// Aberth-Ehrlich simultaneous iteration on the midpoint polynomial.
// Returns approximations to all (complex) roots of p, leading coefficient
// assumed definitely nonzero.
inline std::vector<MpC> aberth(const std::vector<CBall>& cs, mpfr_prec_t prec) {
    int n = static_cast<int>(cs.size()) - 1;
    std::vector<MpC> z;
    // Cauchy bound: 1 + max |c_i| / |c_n|
    Mpf bound(prec), t(prec);
    mpfr_set_ui(bound.get(), 0, MPFR_RNDN);
    Mpf lead(prec);
    mpfr_hypot(lead.get(), cs[n].re(), cs[n].im(), MPFR_RNDN);
    for (int i = 0; i < n; ++i) {
        mpfr_hypot(t.get(), cs[i].re(), cs[i].im(), MPFR_RNDN);
        mpfr_div(t.get(), t.get(), lead.get(), MPFR_RNDN);
        if (mpfr_cmp(t.get(), bound.get()) > 0) mpfr_set(bound.get(), t.get(), MPFR_RNDN);
    }
    mpfr_add_ui(bound.get(), bound.get(), 1, MPFR_RNDN);
    // initial points on a circle of radius ~ bound/2, irrational-ish offset
    for (int j = 0; j < n; ++j) {
        MpC p(prec);
        Mpf ang(prec);
        mpfr_const_pi(ang.get(), MPFR_RNDN);
        mpfr_mul_si(ang.get(), ang.get(), 2 * j, MPFR_RNDN);
        mpfr_div_si(ang.get(), ang.get(), n, MPFR_RNDN);
        mpfr_add_d(ang.get(), ang.get(), 0.43217, MPFR_RNDN);
        Mpf c(prec), s(prec);
        mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
        mpfr_mul(p.re.get(), c.get(), bound.get(), MPFR_RNDN);
        mpfr_mul_d(p.re.get(), p.re.get(), 0.618, MPFR_RNDN);
        mpfr_mul(p.im.get(), s.get(), bound.get(), MPFR_RNDN);
        mpfr_mul_d(p.im.get(), p.im.get(), 0.618, MPFR_RNDN);
        z.push_back(std::move(p));
    }
    // midpoint coefficients
    std::vector<MpC> c;
    for (const auto& b : cs) {
        MpC x(prec);
        mpfr_set(x.re.get(), b.re(), MPFR_RNDN);
        mpfr_set(x.im.get(), b.im(), MPFR_RNDN);
        c.push_back(std::move(x));
    }
    double tol = std::ldexp(1.0, -static_cast<int>(prec) + 8);
    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0;
        for (int j = 0; j < n; ++j) {
            // evaluate p and p' at z_j (Horner)
            MpC pv(prec), dv(prec), tmp(prec);
            mpfr_set(pv.re.get(), c[n].re.get(), MPFR_RNDN);
            mpfr_set(pv.im.get(), c[n].im.get(), MPFR_RNDN);
            for (int i = n - 1; i >= 0; --i) {
                mpc_mul(tmp, dv, z[j]);
                mpc_add(dv, tmp, pv);
                mpc_mul(tmp, pv, z[j]);
                mpc_add(pv, tmp, c[i]);
            }
            if (mpc_abs_d(pv) == 0.0) continue;
            MpC newton(prec);
            if (mpc_abs_d(dv) == 0.0) {
                // nudge off the critical point
                mpfr_add_d(z[j].re.get(), z[j].re.get(), 1e-3, MPFR_RNDN);
                worst = 1;
                continue;
            }
            mpc_div(newton, pv, dv);
            // Aberth correction
            MpC acc(prec);
            for (int k2 = 0; k2 < n; ++k2) {
                if (k2 == j) continue;
                MpC diff(prec), inv(prec), one(prec);
                mpc_sub(diff, z[j], z[k2]);
                if (mpc_abs_d(diff) == 0.0) {
                    mpfr_add_d(z[j].re.get(), z[j].re.get(), 1e-3, MPFR_RNDN);
                    mpc_sub(diff, z[j], z[k2]);
                }
                mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
                mpc_div(inv, one, diff);
                mpc_add(acc, acc, inv);
            }
            MpC denom(prec), prod(prec), one(prec);
            mpc_mul(prod, newton, acc);
            mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
            mpc_sub(denom, one, prod);
            MpC w(prec);
            if (mpc_abs_d(denom) == 0.0)
                w = newton;
            else
                mpc_div(w, newton, denom);
            mpc_sub(z[j], z[j], w);
            double scale = std::max(1.0, mpc_abs_d(z[j]));
            worst = std::max(worst, mpc_abs_d(w) / scale);
        }
        if (worst < tol) break;
    }
    return z;
}

}  // namespace detail

// Certified roots of a polynomial with exact or ball coefficients.
//
// Exact coefficients: multiplicities come from an exact squarefree
// decomposition; each squarefree factor is solved numerically and every
// root certified by the disk |z - z0| <= n |p(z0)/p'(z0)| (which always
// contains a root); n pairwise disjoint disks then isolate all n roots.
// Roots recognizable as Gaussian rationals are returned exactly.
//
// Ball coefficients: roots are clustered and cluster cardinalities
// certified by a Pellet/Rouche test on the shifted polynomial.
//
// Precision escalates by doubling until disjointness is achieved or
// max_prec is reached ("unresolved root cluster").
std::vector<PolyRoot> roots_certified(const CPoly& p, mpfr_prec_t prec = kDefaultPrec,
                                      mpfr_prec_t max_prec = kMaxPrec);

namespace detail {

// Disk around z0 guaranteed to contain >= 1 root: radius n |p(z0)/p'(z0)|.
inline std::optional<CBall> inclusion_disk(const CPoly& p, const MpC& z0, int n,
                                           mpfr_prec_t prec) {
    CBall z = CBall::make(z0.re, z0.im, Mpf(prec));
    CBall pv(prec), dv(prec);
    pv = p.c.back().to_ball(prec);
    for (int i = static_cast<int>(p.c.size()) - 2; i >= 0; --i) {
        dv = dv * z + pv;
        pv = pv * z + p.c[i].to_ball(prec);
    }
    if (!dv.definitely_nonzero()) return std::nullopt;
    RealBall ratio = (pv * dv.inverse()).abs();
    Mpf rad(prec);
    mpfr_mul_si(rad.get(), ratio.hi(), n, MPFR_RNDU);
    Mpf re = z0.re, im = z0.im;
    return CBall::make(std::move(re), std::move(im), std::move(rad));
}

// Pellet test: exactly k roots of p in |z - center| < r for some scanned r?
// Sufficient condition: |q_k| r^k > sum_{i != k} |q_i| r^i for the shifted
// q(w) = p(center + w).
inline std::optional<CBall> pellet_cluster(const CPoly& p, const CBall& center, int k,
                                           double r0, mpfr_prec_t prec) {
    CPoly q = p.shifted(Coeff(center));
    if (k > q.degree()) return std::nullopt;
    double r = std::max(r0, std::ldexp(1.0, -static_cast<int>(prec) / 2));
    for (int scan = 0; scan < 80; ++scan, r *= 2) {
        RealBall rb = RealBall::point(r, prec);
        RealBall rhs(prec);
        RealBall lhs(prec);
        RealBall rpow = RealBall::point(1.0, prec);
        for (int i = 0; i <= q.degree(); ++i) {
            if (i == k)
                lhs = q.at(i).abs(prec) * rpow;
            else
                rhs = rhs + q.at(i).abs(prec) * rpow;
            if (i < q.degree()) rpow = rpow * rb;
        }
        if (rhs.definitely_less(lhs)) {
            Mpf rad(prec);
            mpfr_set_d(rad.get(), r, MPFR_RNDU);
            mpfr_add(rad.get(), rad.get(), center.rad(), MPFR_RNDU);
            Mpf re(prec), im(prec);
            mpfr_set(re.get(), center.re(), MPFR_RNDN);
            mpfr_set(im.get(), center.im(), MPFR_RNDN);
            return CBall::make(std::move(re), std::move(im), std::move(rad));
        }
    }
    return std::nullopt;
}

inline bool all_exact(const CPoly& p) {
    for (const auto& c : p.c)
        if (!c.is_exact()) return false;
    return true;
}

inline QPoly to_qpoly(const CPoly& p) {
    QPoly q;
    q.c.reserve(p.c.size());
    for (const auto& c : p.c) q.c.push_back(c.exact());
    q.normalize();
    return q;
}

inline CPoly to_cpoly(const QPoly& p) {
    CPoly q;
    q.c.reserve(p.c.size());
    for (const auto& c : p.c) q.c.push_back(Coeff(c));
    q.normalize();
    return q;
}

// Solve a squarefree polynomial with exact coefficients: all roots simple,
// certified by disjoint inclusion disks; exact roots snapped and verified.
inline std::vector<Coeff> solve_squarefree_exact(const QPoly& f, mpfr_prec_t prec,
                                                 mpfr_prec_t max_prec) {
    int n = f.degree();
    std::vector<Coeff> out;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(Coeff(-f.at(0) / f.at(1)));
        return out;
    }
    CPoly cp = to_cpoly(f);
    for (mpfr_prec_t P = prec;; P *= 2) {
        std::vector<CBall> cs;
        for (const auto& c : cp.c) cs.push_back(c.to_ball(P));
        std::vector<MpC> zs = aberth(cs, P);
        std::vector<CBall> disks;
        bool ok = true;
        for (const auto& z : zs) {
            auto d = inclusion_disk(cp, z, n, P);
            if (!d) {
                ok = false;
                break;
            }
            disks.push_back(*d);
        }
        if (ok) {
            for (size_t i = 0; i + 1 < disks.size() && ok; ++i)
                for (size_t j = i + 1; j < disks.size() && ok; ++j)
                    if (!disjoint(disks[i], disks[j])) ok = false;
        }
        if (ok) {
            for (auto& d : disks) {
                // try to recognize an exact Gaussian rational root
                if (d.radius_below_2exp(-32)) {
                    if (auto g = snap_to_gauss(d)) {
                        if (f.eval(*g).is_zero() && d.contains(*g)) {
                            out.push_back(Coeff(*g));
                            continue;
                        }
                    }
                }
                out.push_back(Coeff(d));
            }
            std::sort(out.begin(), out.end(),
                      [](const Coeff& a, const Coeff& b) { return order_less(a, b); });
            return out;
        }
        if (P >= max_prec)
            throw UnresolvedClusterError(
                "roots: unresolved root cluster at maximum precision");
    }
}

}  // namespace detail

inline std::vector<PolyRoot> roots_certified(const CPoly& p, mpfr_prec_t prec,
                                             mpfr_prec_t max_prec) {
    if (p.zero()) throw Error("roots: zero input");
    if (p.degree() < 1) throw Error("roots: constant polynomial");
    std::vector<PolyRoot> out;
    if (detail::all_exact(p)) {
        QPoly q = detail::to_qpoly(p);
        auto sf = squarefree_decompose(q);
        for (const auto& [f, mult] : sf) {
            for (auto& root : detail::solve_squarefree_exact(f, prec, max_prec))
                out.push_back(PolyRoot{std::move(root), mult});
        }
        std::sort(out.begin(), out.end(), [](const PolyRoot& a, const PolyRoot& b) {
            return order_less(a.value, b.value);
        });
        return out;
    }

    // Ball path: cluster approximations, certify cardinalities by Pellet.
    if (!p.lc().definitely_nonzero())
        throw UnresolvedClusterError("roots: leading coefficient not provably nonzero");
    int n = p.degree();
    for (mpfr_prec_t P = prec;; P *= 2) {
        std::vector<CBall> cs;
        for (const auto& c : p.c) cs.push_back(c.to_ball(P));
        std::vector<detail::MpC> zs = detail::aberth(cs, P);
        // greedy clustering by approximation distance
        std::vector<std::vector<int>> clusters;
        std::vector<bool> used(zs.size(), false);
        double thresh = 0;
        for (const auto& z : zs) thresh = std::max(thresh, detail::mpc_abs_d(z));
        thresh = std::max(thresh, 1.0) * 1e-6;
        for (size_t i = 0; i < zs.size(); ++i) {
            if (used[i]) continue;
            std::vector<int> cl{static_cast<int>(i)};
            used[i] = true;
            for (size_t j = i + 1; j < zs.size(); ++j) {
                if (used[j]) continue;
                detail::MpC d(P);
                detail::mpc_sub(d, zs[i], zs[j]);
                if (detail::mpc_abs_d(d) < thresh) {
                    cl.push_back(static_cast<int>(j));
                    used[j] = true;
                }
            }
            clusters.push_back(std::move(cl));
        }
        std::vector<CBall> disks;
        std::vector<int> mults;
        bool ok = true;
        for (const auto& cl : clusters) {
            // cluster center: first member; spread as base radius
            double spread = 0;
            for (int idx : cl) {
                detail::MpC d(P);
                detail::mpc_sub(d, zs[cl[0]], zs[idx]);
                spread = std::max(spread, detail::mpc_abs_d(d));
            }
            Mpf re = zs[cl[0]].re, im = zs[cl[0]].im;
            CBall center = CBall::make(std::move(re), std::move(im), Mpf(P));
            if (cl.size() == 1) {
                auto d = detail::inclusion_disk(p, zs[cl[0]], n, P);
                if (!d) {
                    ok = false;
                    break;
                }
                disks.push_back(*d);
                mults.push_back(1);
            } else {
                auto d = detail::pellet_cluster(p, center, static_cast<int>(cl.size()),
                                                spread * 2, P);
                if (!d) {
                    ok = false;
                    break;
                }
                disks.push_back(*d);
                mults.push_back(static_cast<int>(cl.size()));
            }
        }
        if (ok) {
            for (size_t i = 0; i + 1 < disks.size() && ok; ++i)
                for (size_t j = i + 1; j < disks.size() && ok; ++j)
                    if (!disjoint(disks[i], disks[j])) ok = false;
        }
        if (ok) {
            std::vector<PolyRoot> res;
            for (size_t i = 0; i < disks.size(); ++i)
                res.push_back(PolyRoot{Coeff(disks[i]), mults[i]});
            std::sort(res.begin(), res.end(), [](const PolyRoot& a, const PolyRoot& b) {
                return order_less(a.value, b.value);
            });
            return res;
        }
        if (P >= max_prec)
            throw UnresolvedClusterError(
                "roots: unresolved root cluster at maximum precision");
    }
}

}  // namespace puiseux

#endif
