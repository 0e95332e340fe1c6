#ifndef PUISEUX_TREE_HPP
#define PUISEUX_TREE_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/expansion.hpp"
#include "puiseux/newton_polygon.hpp"

namespace puiseux {

// Element (u, h) of the value space, or the zero element 0_V.
struct ValuePair {
    bool zero = true;
    Coeff u;       // leading coefficient, nonzero unless zero
    ExtRat h;      // order; +infinity for 0_V

    static ValuePair zero_v() { return ValuePair{}; }
    static ValuePair of(Coeff lead, ExtRat ord) {
        ValuePair v;
        v.zero = false;
        v.u = std::move(lead);
        v.h = std::move(ord);
        return v;
    }
    std::string str() const {
        return zero ? "0_V" : "(" + u.str() + ", " + h.str() + ")";
    }
};

enum class Tri { False, True, Unknown };

// Equality in the value space: exact on exact data, disk-disjointness-based
// on balls.
inline Tri value_pair_equal(const ValuePair& a, const ValuePair& b) {
    if (a.zero || b.zero) return (a.zero && b.zero) ? Tri::True : Tri::False;
    if (!(a.h == b.h)) return Tri::False;
    if (a.u.is_exact() && b.u.is_exact())
        return a.u.exact() == b.u.exact() ? Tri::True : Tri::False;
    return possibly_equal(a.u, b.u) ? Tri::Unknown : Tri::False;
}

// A critical point of val_phi attached to a bar.
struct CriticalMark {
    Coeff coordinate;   // the bar coordinate c (critical point of P_B)
    int multiplicity;   // m_crit
    ValuePair value;    // (P_B(c), L(B))
};

// A bar of the tree model: a maximal set of classes splitting at height h.
struct Bar {
    Rat height;
    PuiseuxSeries stem;            // common prefix strictly below height
    CPoly assoc;                   // P_B(z)
    ExtRat loja;                   // L(B)
    std::vector<int> supported;    // indices of supported root branches
    std::vector<CriticalMark> marks;
    int parent = -1;               // enclosing bar (lower height), -1 at the root
};

// Blurred critical point of val_phi: an equivalence class with multiplicity.
struct CriticalPoint {
    PuiseuxSeries coordinate;  // canonical coordinate
    ExtRat height;             // class height (bar height; +inf at a multiple root)
    int multiplicity;          // m_crit
    int bar = -1;              // index into bars, -1 for multiple-root classes
    ExtRat loja;               // Lojasiewicz exponent L
    ValuePair value;
};

struct KuoLuTree {
    XiPolyC phi;
    int order = 0;  // mini-regularity order m
    std::vector<RootBranch> branches;
    std::vector<Bar> bars;                  // pre-order, parents first
    std::vector<CriticalPoint> critical;    // all of C(val_phi)
};

namespace detail {

inline PuiseuxSeries series_below(const PuiseuxSeries& s, const Rat& h) {
    std::vector<PuiseuxSeries::Term> ts;
    for (const auto& t : s.terms()) {
        if (!(t.exp < h)) break;
        ts.push_back(t);
    }
    return PuiseuxSeries::from_terms(std::move(ts));
}

inline Rat contact_rat(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    ExtRat c = contact_order_series(a, b);
    if (c.is_infinite()) throw InternalError("tree: coincident branches");
    return c.value();
}

inline void build_bars(KuoLuTree& tree, const std::vector<int>& cluster, int parent,
                       const ExpandCtx& cx) {
    if (cluster.size() <= 1) return;
    // lowest splitting height within the cluster
    Rat h = contact_rat(tree.branches[cluster[0]].series, tree.branches[cluster[1]].series);
    for (size_t i = 0; i < cluster.size(); ++i)
        for (size_t j = i + 1; j < cluster.size(); ++j) {
            Rat c = contact_rat(tree.branches[cluster[i]].series,
                                tree.branches[cluster[j]].series);
            if (c < h) h = c;
        }
    // partition: same group iff contact > h
    std::vector<std::vector<int>> groups;
    for (int idx : cluster) {
        bool placed = false;
        for (auto& g : groups) {
            if (contact_rat(tree.branches[g[0]].series, tree.branches[idx].series) > h) {
                g.push_back(idx);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({idx});
    }
    if (groups.size() < 2) throw InternalError("tree: splitting height did not split");

    Bar bar;
    bar.height = h;
    bar.stem = series_below(tree.branches[cluster[0]].series, h);
    bar.supported = cluster;
    bar.parent = parent;
    // P_B and L(B) from the polygon at the stem (Eq. the a=0 translation)
    XiPolyC psi = tree.phi.recentered(bar.stem).cleaned(cx.tiny);
    Polygon<Coeff> P = build_polygon(psi, cx.tiny);
    Edge<Coeff> e = P.edge_at_coslope(h);
    bar.assoc = e.assoc;
    bar.loja = e.lojasiewicz();
    int self = static_cast<int>(tree.bars.size());
    tree.bars.push_back(std::move(bar));
    for (const auto& g : groups) build_bars(tree, g, self, cx);
}

// Critical points of P_B that are not roots of P_B, with multiplicities:
// the KLKP content of one bar.
inline void bar_critical_marks(Bar& bar, const ExpandCtx& cx) {
    CPoly pd = bar.assoc.derivative();
    if (pd.degree() < 1) {
        if (pd.zero() || pd.degree() == 0) return;  // no critical points
    }
    if (detail::all_exact(bar.assoc)) {
        QPoly p = detail::to_qpoly(bar.assoc);
        QPoly d = detail::to_qpoly(pd);
        if (d.degree() < 1) return;
        for (const auto& [s, kappa] : squarefree_decompose(d)) {
            // split off the part whose roots are also roots of P_B: those
            // critical points follow the root clusters to higher bars
            QPoly scrit = s / poly_gcd(s, p);
            if (scrit.degree() < 1) continue;
            for (const auto& c : detail::solve_squarefree_exact(scrit, cx.prec, cx.max_prec)) {
                Coeff val = c.is_exact() ? Coeff(p.eval(c.exact())) : bar.assoc.eval(c);
                if (!val.definitely_nonzero())
                    throw AmbiguousZeroError("tree: critical value not provably nonzero");
                bar.marks.push_back(CriticalMark{c, kappa, ValuePair::of(val, bar.loja)});
            }
        }
    } else {
        if (pd.degree() < 1) return;
        for (const auto& r : roots_certified(pd, cx.prec, cx.max_prec)) {
            Coeff val = bar.assoc.eval(r.value);
            if (val.definitely_nonzero()) {
                bar.marks.push_back(CriticalMark{r.value, r.multiplicity,
                                                 ValuePair::of(val, bar.loja)});
            }
            // else: the critical point sits on a root of P_B and is
            // accounted for on a higher bar; the global multiplicity
            // conservation check validates this reading
        }
    }
    std::sort(bar.marks.begin(), bar.marks.end(),
              [](const CriticalMark& a, const CriticalMark& b) {
                  return order_less(a.coordinate, b.coordinate);
              });
}

}  // namespace detail

// Build the tree model: bars where at least two branch groups separate,
// stems, associated polynomials, and the blurred critical points.
inline KuoLuTree build_tree_attempt(const XiPolyC& phi, std::vector<RootBranch> branches,
                                    const detail::ExpandCtx& cx) {
    KuoLuTree tree;
    tree.phi = phi;
    tree.order = phi.cleaned(cx.tiny).mini_regular_order();
    tree.branches = std::move(branches);
    std::vector<int> all(tree.branches.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    detail::build_bars(tree, all, -1, cx);

    // critical points: bar marks (KLKP) ...
    for (size_t b = 0; b < tree.bars.size(); ++b) {
        detail::bar_critical_marks(tree.bars[b], cx);
        for (const auto& mk : tree.bars[b].marks) {
            CriticalPoint cp;
            const Bar& bar = tree.bars[b];
            cp.coordinate = mk.coordinate.is_exact() && mk.coordinate.exact().is_zero()
                                ? bar.stem
                                : bar.stem + PuiseuxSeries::monomial(bar.height, mk.coordinate);
            cp.height = ExtRat(bar.height);
            cp.multiplicity = mk.multiplicity;
            cp.bar = static_cast<int>(b);
            cp.loja = bar.loja;
            cp.value = mk.value;
            tree.critical.push_back(std::move(cp));
        }
    }
    // ... plus the classes at multiple roots
    for (const auto& br : tree.branches) {
        if (br.multiplicity < 2) continue;
        CriticalPoint cp;
        cp.coordinate = br.series;
        cp.height = ExtRat::infinity();
        cp.multiplicity = br.multiplicity - 1;
        cp.bar = -1;
        cp.loja = ExtRat::infinity();
        cp.value = ValuePair::zero_v();
        tree.critical.push_back(std::move(cp));
    }
    int total = 0;
    for (const auto& cp : tree.critical) total += cp.multiplicity;
    if (total != tree.order - 1) {
        std::string msg = "tree: critical multiplicities sum to " + std::to_string(total) +
                          ", expected " + std::to_string(tree.order - 1);
        // with ball data a lost mark is a precision problem, not a bug
        bool has_ball = false;
        for (const auto& bar : tree.bars)
            if (!detail::all_exact(bar.assoc)) has_ball = true;
        if (has_ball) throw AmbiguousZeroError(msg);
        throw InternalError(msg);
    }
    return tree;
}

// Full analysis with precision escalation: expansion, tree, critical points.
inline KuoLuTree analyze(const XiPolyC& phi, EngineOptions opts = {}) {
    bool exact = exact_and_complete(phi);
    mpfr_prec_t P = opts.prec;
    for (int attempt = 0;; ++attempt) {
        try {
            EngineOptions o = opts;
            o.prec = P;
            bool drop = attempt > 0 || !exact;
            detail::ExpandCtx cx{P, opts.max_prec,
                                 drop ? -static_cast<long>(P) / 2 : -(1L << 30)};
            auto branches = detail::expand_attempt(phi, o, P, drop);
            return build_tree_attempt(phi, std::move(branches), cx);
        } catch (const AmbiguousZeroError& e) {
            if (!exact || P >= opts.max_prec)
                throw UnresolvedClusterError(std::string("analysis: ") + e.what());
            P *= 2;
        } catch (const UnresolvedClusterError&) {
            if (!exact || P >= opts.max_prec) throw;
            P *= 2;
        }
    }
}

// h(mu_phi) and the canonical coordinate: mu with terms above the height
// deleted. Returns the pair (truncation, height).
inline std::pair<PuiseuxSeries, ExtRat> truncate_at(const PuiseuxSeries& mu,
                                                    const KuoLuTree& tree) {
    ExtRat h(Rat(0));
    bool first = true;
    for (const auto& br : tree.branches) {
        ExtRat c = contact_order_series(mu, br.series);
        if (first || h < c) h = c;
        first = false;
        if (h.is_infinite()) break;
    }
    if (tree.branches.empty()) throw InternalError("truncate_at: no roots");
    if (h.is_infinite()) return {mu, h};
    return {mu.deleted_above(h.value()), h};
}

// val_phi as an element of the value space.
inline ValuePair valuation(const PuiseuxSeries& mu, const KuoLuTree& tree) {
    auto [canon, h] = truncate_at(mu, tree);
    if (h.is_infinite()) return ValuePair::zero_v();
    PuiseuxSeries v = tree.phi.evaluate(canon);
    if (v.known_zero()) return ValuePair::zero_v();
    ExtRat ord = v.order();
    return ValuePair::of(v.leading_coeff(), ord);
}

// The bar <-> extended-polygon-edge bijection at alpha, with the
// translation identity P_B(z) = P_{iota(B)}(z - a) verified.
struct BarEdgePair {
    int bar;
    Edge<Coeff> edge;
    Coeff a;  // the B-coordinate of alpha
};

inline std::vector<BarEdgePair> bar_edge_bijection(const PuiseuxSeries& alpha,
                                                   const KuoLuTree& tree,
                                                   mpfr_prec_t prec = kDefaultPrec) {
    XiPolyC psi = tree.phi.recentered(alpha).cleaned(-static_cast<long>(prec) / 2);
    Polygon<Coeff> P = build_polygon(psi, -static_cast<long>(prec) / 2);
    std::vector<BarEdgePair> out;
    for (size_t b = 0; b < tree.bars.size(); ++b) {
        const Bar& bar = tree.bars[b];
        ExtRat c = contact_order_series(alpha, bar.stem);
        if (c < ExtRat(bar.height)) continue;  // bar does not support alpha
        Coeff a = alpha.coeff_at(bar.height);
        Edge<Coeff> e = P.edge_at_coslope(bar.height);
        // translation identity
        CPoly translated = e.assoc.shifted(-a);
        if (translated.degree() != bar.assoc.degree())
            throw InternalError("bar-edge bijection: degree mismatch in Eq. translation");
        for (int i = 0; i <= translated.degree(); ++i)
            if (!possibly_equal(translated.at(i), bar.assoc.at(i)))
                throw InternalError("bar-edge bijection: translation identity fails");
        out.push_back(BarEdgePair{static_cast<int>(b), std::move(e), a});
    }
    return out;
}

}  // namespace puiseux

#endif
