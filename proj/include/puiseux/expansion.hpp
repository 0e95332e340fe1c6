#ifndef PUISEUX_EXPANSION_HPP
#define PUISEUX_EXPANSION_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "puiseux/newton_polygon.hpp"
#include "puiseux/poly_roots.hpp"
#include "puiseux/series.hpp"
#include "puiseux/xi_poly.hpp"

namespace puiseux {

struct EngineOptions {
    ExtRat depth = ExtRat::infinity();  // explicit target depth; default = separation + steps
    int extra_steps = 4;                // Newton steps past separation in default mode
    mpfr_prec_t prec = kDefaultPrec;
    mpfr_prec_t max_prec = kMaxPrec;
    bool verify_residuals = true;
    int jobs = 1;                       // opt-in parallelism for independent checks
};

// A truncated Puiseux root of phi.
struct RootBranch {
    PuiseuxSeries series;
    int multiplicity = 1;
    Rat separation_depth{0};  // max contact order with any other branch
};

inline bool exact_and_complete(const XiPolyC& phi) {
    for (const auto& s : phi.a) {
        if (!s.trunc().is_infinite()) return false;
        for (const auto& t : s.terms())
            if (!t.coeff.is_exact()) return false;
    }
    return true;
}

// Deterministic branch order: term-by-term (exponent, coefficient), then
// truncation depth.
inline bool branch_order_less(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    size_t n = std::min(a.terms().size(), b.terms().size());
    for (size_t i = 0; i < n; ++i) {
        const auto& x = a.terms()[i];
        const auto& y = b.terms()[i];
        if (x.exp != y.exp) return x.exp < y.exp;
        if (!possibly_equal(x.coeff, y.coeff)) return order_less(x.coeff, y.coeff);
    }
    if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
    return b.trunc() < a.trunc();
}

namespace detail {

struct Tip {
    XiPolyC psi;              // phi recentered at prefix
    Polygon<Coeff> polygon;   // polygon of psi
    PuiseuxSeries prefix;     // trunc = co-slope of the next continuing edge
    ExtRat last_h{Rat(0)};    // continuing edges must be steeper than this
    int factor_mult = 1;
    int mult_in_factor = 1;
    bool exact_root = false;
    int steps = 0;
};

struct ExpandCtx {
    mpfr_prec_t prec;
    mpfr_prec_t max_prec;
    long tiny;  // polygon drop threshold exponent
};

inline std::vector<const Edge<Coeff>*> continuing_edges(const Polygon<Coeff>& P,
                                                        const ExtRat& last_h) {
    std::vector<const Edge<Coeff>*> out;
    for (const auto* e : P.proper_edges())
        if (last_h < e->coslope) out.push_back(e);
    return out;
}

inline ExtRat next_coslope(const Polygon<Coeff>& P, const ExtRat& last_h) {
    ExtRat best = ExtRat::infinity();
    for (const auto* e : P.proper_edges())
        if (last_h < e->coslope && e->coslope < best) best = e->coslope;
    return best;
}

// Nonzero roots of an edge polynomial: the z^{left.k} factor is split off
// structurally (those continuations live on steeper edges).
inline std::vector<PolyRoot> edge_roots(const Edge<Coeff>& e, const ExpandCtx& cx) {
    CPoly p = e.assoc;
    int low = e.left.first;
    if (low > 0) {
        if (p.degree() < low) throw InternalError("edge polynomial shorter than vertex");
        p.c.erase(p.c.begin(), p.c.begin() + low);
    }
    if (p.degree() < 1) return {};
    return roots_certified(p, cx.prec, cx.max_prec);
}

// Set prefix truncation from the cached polygon: the next continuing
// co-slope bounds what is known.
inline void refresh_trunc(Tip& t) {
    if (t.exact_root) return;
    t.prefix = t.prefix.truncated(next_coslope(t.polygon, t.last_h));
}

// One Newton step along a separated (simple) branch. Returns false when the
// prefix is an exact root.
inline bool step_tip(Tip& t, const ExpandCtx& cx) {
    if (t.exact_root) return false;
    auto cont = continuing_edges(t.polygon, t.last_h);
    int m_l = t.polygon.root_multiplicity();
    if (cont.empty()) {
        if (m_l != 1)
            throw InternalError("simple branch ended with multiplicity " +
                                std::to_string(m_l));
        t.exact_root = true;
        // all terms known: the series is the exact root
        std::vector<PuiseuxSeries::Term> ts(t.prefix.terms().begin(), t.prefix.terms().end());
        t.prefix = PuiseuxSeries::from_terms(std::move(ts));
        return false;
    }
    if (m_l != 0 || cont.size() != 1)
        throw InternalError("simple branch split unexpectedly");
    const Edge<Coeff>& e = *cont[0];
    auto roots = edge_roots(e, cx);
    if (roots.size() != 1 || roots[0].multiplicity != 1)
        throw InternalError("simple branch: edge polynomial not simple");
    Rat h = as_rat(e.coslope, "step co-slope");
    PuiseuxSeries stepm = PuiseuxSeries::monomial(h, roots[0].value);
    t.psi = t.psi.recentered(stepm).cleaned(cx.tiny);
    t.polygon = build_polygon(t.psi, cx.tiny);
    std::vector<PuiseuxSeries::Term> ts(t.prefix.terms().begin(), t.prefix.terms().end());
    ts.push_back({h, roots[0].value});
    t.prefix = PuiseuxSeries::from_terms(std::move(ts));
    t.last_h = ExtRat(h);
    ++t.steps;
    refresh_trunc(t);
    return true;
}

// Recursive expansion of one (squarefree when possible) factor.
inline void expand_factor(const XiPolyC& psi0, const PuiseuxSeries& prefix,
                          const ExtRat& last_h, int expected, int factor_mult,
                          const ExpandCtx& cx, int depth_guard, std::vector<Tip>& out) {
    if (depth_guard > 96)
        throw TruncationError(
            "expansion: branch did not separate (non-polynomial multiple root?)");
    Polygon<Coeff> P = build_polygon(psi0, cx.tiny);
    auto cont = continuing_edges(P, last_h);
    int m_l = P.root_multiplicity();
    int extent = 0;
    for (const auto* e : cont) extent += e->right.first - e->left.first;
    if (expected >= 0 && m_l + extent != expected)
        throw InternalError("expansion: lost roots (expected " + std::to_string(expected) +
                            ", found " + std::to_string(m_l + extent) + ")");
    if (m_l >= 1) {
        Tip t;
        t.psi = psi0;
        t.polygon = P;
        std::vector<PuiseuxSeries::Term> ts(prefix.terms().begin(), prefix.terms().end());
        t.prefix = PuiseuxSeries::from_terms(std::move(ts));  // trunc = inf
        t.last_h = last_h;
        t.factor_mult = factor_mult;
        t.mult_in_factor = m_l;
        t.exact_root = true;
        out.push_back(std::move(t));
    }
    for (const auto* e : cont) {
        Rat h = as_rat(e->coslope, "edge co-slope");
        if (h < 1)
            throw NonMiniRegularError(
                "expansion: root of order < 1 (input not mini-regular?)");
        for (const auto& root : edge_roots(*e, cx)) {
            PuiseuxSeries stepm = PuiseuxSeries::monomial(h, root.value);
            XiPolyC psi1 = psi0.recentered(stepm).cleaned(cx.tiny);
            PuiseuxSeries pre1 = prefix + stepm;
            if (root.multiplicity == 1) {
                Tip t;
                t.psi = std::move(psi1);
                t.polygon = build_polygon(t.psi, cx.tiny);
                t.prefix = std::move(pre1);
                t.last_h = ExtRat(h);
                t.factor_mult = factor_mult;
                t.mult_in_factor = 1;
                ++t.steps;
                refresh_trunc(t);
                out.push_back(std::move(t));
            } else {
                expand_factor(psi1, pre1, ExtRat(h), root.multiplicity, factor_mult, cx,
                              depth_guard + 1, out);
            }
        }
    }
}

// Split an exact polynomial-in-y XiPoly into squarefree factors over the
// rational function field in Y = y^{1/N}.
struct FactorPart {
    XiPolyC phi;
    int multiplicity;
};

inline std::vector<FactorPart> squarefree_split(const XiPolyC& phi) {
    Int nall = 1;
    for (const auto& s : phi.a)
        for (const auto& t : s.terms()) {
            if (sgn(t.exp) < 0) throw Error("expansion: negative exponent in input");
            nall = lcm_int(nall, rat_den(t.exp));
        }
    long N = nall.get_si();
    Poly<QRatFunc> p;
    p.c.reserve(phi.a.size());
    for (const auto& s : phi.a) {
        QPoly cy;
        for (const auto& t : s.terms()) {
            Rat scaled = t.exp * Rat(N);
            long deg = mpz_class(rat_num(scaled)).get_si();
            if (cy.degree() < deg) cy.c.resize(deg + 1, GaussRat());
            cy.c[deg] = t.coeff.exact();
        }
        cy.normalize();
        p.c.push_back(QRatFunc(cy));
    }
    p.normalize();
    std::vector<FactorPart> out;
    for (const auto& [f, mult] : squarefree_decompose(p)) {
        Poly<QPoly> fz = clear_denominators(f);
        XiPolyC xp;
        xp.a.reserve(fz.c.size());
        for (const auto& cy : fz.c) {
            std::vector<PuiseuxSeries::Term> ts;
            for (int d = 0; d <= cy.degree(); ++d)
                if (!cy.at(d).is_zero()) ts.push_back({Rat(d) / Rat(N), Coeff(cy.at(d))});
            xp.a.push_back(PuiseuxSeries::from_terms(std::move(ts)));
        }
        xp.normalize();
        out.push_back(FactorPart{std::move(xp), mult});
    }
    return out;
}

inline std::vector<RootBranch> expand_attempt(const XiPolyC& phi, const EngineOptions& opts,
                                              mpfr_prec_t prec, bool drop_tiny) {
    ExpandCtx cx{prec, opts.max_prec,
                 drop_tiny ? -static_cast<long>(prec) / 2 : -(1L << 30)};
    XiPolyC phic = phi.cleaned(cx.tiny);
    int m = phic.mini_regular_order();

    std::vector<FactorPart> parts;
    if (exact_and_complete(phic)) {
        parts = squarefree_split(phic);
    } else {
        parts.push_back(FactorPart{phic, 1});
    }

    std::vector<Tip> tips;
    for (const auto& part : parts)
        expand_factor(part.phi, PuiseuxSeries::zero(), ExtRat(Rat(0)), -1,
                      part.multiplicity, cx, 0, tips);

    int total = 0;
    for (const auto& t : tips) total += t.factor_mult * t.mult_in_factor;
    if (total != m)
        throw InternalError("expansion: multiplicities sum to " + std::to_string(total) +
                            ", expected " + std::to_string(m));

    // resolve all pairwise contacts, extending branches when they still agree
    size_t n = tips.size();
    std::vector<std::vector<Rat>> contact(n, std::vector<Rat>(n, Rat(0)));
    for (int guard = 0;; ++guard) {
        if (guard > 512) throw TruncationError("expansion: separation did not resolve");
        bool again = false;
        for (size_t i = 0; i < n && !again; ++i)
            for (size_t j = i + 1; j < n && !again; ++j) {
                try {
                    ExtRat c = contact_order_series(tips[i].prefix, tips[j].prefix);
                    if (c.is_infinite())
                        throw InternalError("expansion: coincident branches");
                    contact[i][j] = contact[j][i] = c.value();
                } catch (const TruncationError&) {
                    bool moved = step_tip(tips[i], cx);
                    moved |= step_tip(tips[j], cx);
                    if (!moved)
                        throw InternalError("expansion: identical exact roots");
                    again = true;
                }
            }
        if (!again) break;
    }

    // extend to the requested depth
    for (size_t i = 0; i < n; ++i) {
        Rat sep(0);
        for (size_t j = 0; j < n; ++j)
            if (j != i && contact[i][j] > sep) sep = contact[i][j];
        if (opts.depth.is_finite()) {
            while (!tips[i].exact_root && tips[i].prefix.trunc() < opts.depth &&
                   step_tip(tips[i], cx)) {
            }
            // always at least one stored term past separation
            while (!tips[i].exact_root && !(ExtRat(sep) < tips[i].prefix.trunc()) &&
                   step_tip(tips[i], cx)) {
            }
        } else {
            auto beyond = [&]() {
                int cnt = 0;
                for (const auto& t : tips[i].prefix.terms())
                    if (t.exp > sep) ++cnt;
                return cnt;
            };
            while (!tips[i].exact_root && beyond() < opts.extra_steps && step_tip(tips[i], cx)) {
            }
        }
    }

    std::vector<RootBranch> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        Rat sep(0);
        for (size_t j = 0; j < n; ++j)
            if (j != i && contact[i][j] > sep) sep = contact[i][j];
        out.push_back(RootBranch{tips[i].prefix, tips[i].factor_mult * tips[i].mult_in_factor, sep});
    }
    std::sort(out.begin(), out.end(), [](const RootBranch& a, const RootBranch& b) {
        return branch_order_less(a.series, b.series);
    });

    if (opts.verify_residuals) {
        for (size_t i = 0; i < out.size(); ++i) {
            // O(phi(branch_i)) >= sum_j m_j c_ij with c_ii = trunc_i. Evaluate
            // the stored prefix as a plain finite series so the certified
            // depth of the residual is not capped by truncation bookkeeping.
            ExtRat bound(Rat(0));
            for (size_t j = 0; j < out.size(); ++j) {
                ExtRat cij = i == j
                                 ? out[i].series.trunc()
                                 : min(out[i].series.trunc(),
                                       contact_order_series(out[i].series, out[j].series));
                for (int r = 0; r < out[j].multiplicity; ++r) bound = bound + cij;
            }
            std::vector<PuiseuxSeries::Term> ts(out[i].series.terms().begin(),
                                                out[i].series.terms().end());
            PuiseuxSeries residual =
                phic.evaluate(PuiseuxSeries::from_terms(std::move(ts)));
            for (const auto& t : residual.terms()) {
                if (!(ExtRat(t.exp) < bound)) break;
                if (zero_status_of(t.coeff) == ZeroStatus::kNonZero)
                    throw InternalError("expansion: residual of branch " +
                                        std::to_string(i) + " has a nonzero term at y^" +
                                        t.exp.get_str());
            }
        }
    }
    return out;
}

}  // namespace detail

// Newton-Puiseux expansion: all roots of phi in M_1 as truncated series
// with exact multiplicities. Precision escalates on undecidable ball
// comparisons; the unresolved case surfaces as UnresolvedClusterError.
inline std::vector<RootBranch> expand_roots(const XiPolyC& phi, EngineOptions opts = {}) {
    bool exact = exact_and_complete(phi);
    mpfr_prec_t P = opts.prec;
    for (int attempt = 0;; ++attempt) {
        try {
            EngineOptions o = opts;
            o.prec = P;
            return detail::expand_attempt(phi, o, P, attempt > 0 || !exact);
        } catch (const AmbiguousZeroError& e) {
            if (!exact || P >= opts.max_prec)
                throw UnresolvedClusterError(std::string("expansion: ") + e.what());
            P *= 2;
        } catch (const UnresolvedClusterError&) {
            if (!exact || P >= opts.max_prec) throw;
            P *= 2;
        }
    }
}

}  // namespace puiseux

#endif
