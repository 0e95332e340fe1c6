#ifndef PUISEUX_NEWTON_POLYGON_HPP
#define PUISEUX_NEWTON_POLYGON_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/xi_poly.hpp"

namespace puiseux {

template <class C>
struct Dot {
    int k;        // xi-degree
    Rat q;        // y-order
    C coeff;      // coefficient of y^q xi^k
};

enum class EdgeKind { Horizontal, Proper, Vertical, Vertex, ArtificialVertex };

inline const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Horizontal: return "horizontal";
        case EdgeKind::Proper: return "proper";
        case EdgeKind::Vertical: return "vertical";
        case EdgeKind::Vertex: return "vertex";
        case EdgeKind::ArtificialVertex: return "artificial-vertex";
    }
    return "?";
}

using Vertex2 = std::pair<int, Rat>;  // (k, q)

template <class C>
struct Edge {
    EdgeKind kind = EdgeKind::Proper;
    Vertex2 left{0, Rat(0)};   // smaller k
    Vertex2 right{0, Rat(0)};  // larger k
    ExtRat coslope;            // 0 horizontal, +inf vertical
    std::vector<Dot<C>> dots;  // dots lying on the edge
    Poly<C> assoc;             // P_E(z) = sum over edge dots of c_k z^k

    // L(E) = q + m h evaluated at the right vertex; +inf for the vertical edge.
    ExtRat lojasiewicz() const {
        if (coslope.is_infinite()) return ExtRat::infinity();
        return ExtRat(right.second + Rat(right.first) * coslope.value());
    }
};

template <class C>
struct Polygon {
    std::vector<Edge<C>> edges;              // E_0 horizontal ... E_l vertical
    std::vector<Dot<C>> dots;                // per-k lowest dots (build input)
    std::vector<std::pair<int, Rat>> unknown;  // (k, depth): zero to stored depth
    Vertex2 last_vertex{0, Rat(0)};          // (m_l, q_l)

    int root_multiplicity() const { return last_vertex.first; }  // m_l

    // Proper (non-horizontal, non-vertical) edges in increasing co-slope order.
    std::vector<const Edge<C>*> proper_edges() const {
        std::vector<const Edge<C>*> out;
        for (const auto& e : edges)
            if (e.kind == EdgeKind::Proper) out.push_back(&e);
        return out;
    }

    const Edge<C>& top() const {  // E_top = E_{l-1}
        if (edges.size() < 2) throw InternalError("polygon: no top edge");
        return edges[edges.size() - 2];
    }

    // The unique edge of NP_ext with co-slope h: a proper edge when one
    // exists, otherwise the vertex edge (V_i, h), with the last-vertex
    // convention ((0, q_l), h) when m_l = 0 and h exceeds the top co-slope.
    Edge<C> edge_at_coslope(const Rat& h) const {
        if (sgn(h) <= 0) throw Error("edge_at_coslope: co-slope must be positive");
        const Edge<C>* steeper = nullptr;  // lowest proper edge with coslope > h
        for (const auto& e : edges) {
            if (e.kind != EdgeKind::Proper) continue;
            if (e.coslope == ExtRat(h)) return e;
            if (ExtRat(h) < e.coslope) {
                steeper = &e;
                break;
            }
        }
        Vertex2 v = steeper ? steeper->right : last_vertex;
        check_line_clear(v, h, /*strict_except_vertex=*/true);
        Edge<C> e;
        e.left = e.right = v;
        e.coslope = ExtRat(h);
        const Dot<C>* vd = dot_at(v.first);
        if (vd == nullptr || vd->q != v.second)
            throw InternalError("edge_at_coslope: vertex has no dot");
        e.dots.push_back(*vd);
        e.assoc = Poly<C>::monomial(vd->coeff, v.first);
        e.kind = v.first == 0 ? EdgeKind::ArtificialVertex : EdgeKind::Vertex;
        return e;
    }

    const Dot<C>* dot_at(int k) const {
        for (const auto& d : dots)
            if (d.k == k) return &d;
        return nullptr;
    }

  private:
    // All dots must lie on or above the line through v with co-slope h,
    // touching only at v; unknown coefficients must be provably above.
    void check_line_clear(const Vertex2& v, const Rat& h, bool) const {
        Rat L = v.second + Rat(v.first) * h;
        for (const auto& d : dots) {
            Rat val = d.q + Rat(d.k) * h;
            if (val < L || (val == L && d.k != v.first))
                throw InternalError("edge_at_coslope: vertex line not supporting");
        }
        for (const auto& [k, depth] : unknown) {
            if (!(Rat(depth) + Rat(k) * h > L))
                throw TruncationError(
                    "edge_at_coslope: coefficient of xi^" + std::to_string(k) +
                    " not stored deep enough to certify the vertex edge");
        }
    }
};

// Lower-left convex hull of the dot set of phi at its current center.
// Ball coefficients that are tiny zero-containing disks are dropped
// (radius below 2^{tiny_exp}); fat undecidable ones abort.
template <class C>
Polygon<C> build_polygon_from_dots(std::vector<Dot<C>> ds,
                                   std::vector<std::pair<int, Rat>> unknown = {}) {
    Polygon<C> P;
    if (ds.empty()) throw Error("newton polygon: no dots");
    std::sort(ds.begin(), ds.end(), [](const Dot<C>& a, const Dot<C>& b) { return a.k < b.k; });
    P.dots = std::move(ds);
    P.unknown = std::move(unknown);
    const auto& dots = P.dots;

    // monotone-chain lower hull (k strictly increasing)
    std::vector<int> chain;
    for (int i = 0; i < static_cast<int>(dots.size()); ++i) {
        while (chain.size() >= 2) {
            const auto& a = dots[chain[chain.size() - 2]];
            const auto& b = dots[chain[chain.size() - 1]];
            const auto& c = dots[i];
            // keep b only if it is strictly below segment a-c: cross > 0 keeps
            Rat cross = (Rat(b.k - a.k)) * (c.q - a.q) - (b.q - a.q) * Rat(c.k - a.k);
            if (cross <= 0)
                chain.pop_back();
            else
                break;
        }
        chain.push_back(i);
    }

    // prefix of the chain with strictly decreasing q = the proper edges
    size_t jstar = 0;
    for (size_t i = 1; i < chain.size(); ++i) {
        if (dots[chain[i]].q < dots[chain[jstar]].q) jstar = i;
    }
    P.last_vertex = {dots[chain[0]].k, dots[chain[0]].q};
    Rat qmin = dots[chain[jstar]].q;
    Vertex2 bottom{dots[chain[jstar]].k, qmin};

    // E_0: horizontal through the bottom vertex
    Edge<C> e0;
    e0.kind = EdgeKind::Horizontal;
    e0.coslope = ExtRat(Rat(0));
    e0.left = bottom;
    e0.right = bottom;
    for (const auto& d : dots)
        if (d.q == qmin) {
            e0.dots.push_back(d);
            if (d.k > e0.right.first) e0.right = {d.k, d.q};
        }
    for (const auto& d : e0.dots) {
        Poly<C> mono = Poly<C>::monomial(d.coeff, d.k);
        e0.assoc = e0.assoc + mono;
    }

    // proper edges from bottom up-left: chain[jstar] .. chain[0]
    std::vector<Edge<C>> proper;
    for (size_t i = jstar; i >= 1; --i) {
        const auto& rv = dots[chain[i]];
        const auto& lv = dots[chain[i - 1]];
        if (!(lv.q > rv.q)) continue;  // flat or rising: belongs to E_0 side
        Edge<C> e;
        e.kind = EdgeKind::Proper;
        e.left = {lv.k, lv.q};
        e.right = {rv.k, rv.q};
        e.coslope = ExtRat((lv.q - rv.q) / Rat(rv.k - lv.k));
        Rat h = e.coslope.value();
        Rat L = rv.q + Rat(rv.k) * h;
        for (const auto& d : dots)
            if (d.k >= lv.k && d.k <= rv.k && d.q + Rat(d.k) * h == L) e.dots.push_back(d);
        for (const auto& d : e.dots) e.assoc = e.assoc + Poly<C>::monomial(d.coeff, d.k);
        proper.push_back(std::move(e));
    }

    P.edges.push_back(std::move(e0));
    for (auto& e : proper) P.edges.push_back(std::move(e));

    Edge<C> el;
    el.kind = EdgeKind::Vertical;
    el.coslope = ExtRat::infinity();
    el.left = el.right = P.last_vertex;
    P.edges.push_back(std::move(el));

    // soundness: unknown coefficients must lie strictly above every edge line
    for (const auto& [k, depth] : P.unknown) {
        if (k < P.last_vertex.first)
            throw TruncationError("newton polygon: coefficient of xi^" +
                                  std::to_string(k) +
                                  " zero to stored depth left of the last vertex");
        for (const auto& e : P.edges) {
            if (e.coslope.is_infinite()) continue;
            Rat h = e.coslope.value();
            Rat L = e.right.second + Rat(e.right.first) * h;
            if (!(depth + Rat(k) * h > L))
                throw TruncationError("newton polygon: coefficient of xi^" +
                                      std::to_string(k) +
                                      " not stored deep enough to fix the hull");
        }
    }
    return P;
}

template <class C>
Polygon<C> build_polygon(const XiPoly<C>& phi, long tiny_exp = -64) {
    std::vector<Dot<C>> ds;
    std::vector<std::pair<int, Rat>> unknown;
    for (int k = 0; k <= phi.degree(); ++k) {
        Series<C> s = phi.coeff(k).cleaned(tiny_exp);
        if (s.empty()) {
            if (s.trunc().is_finite()) unknown.emplace_back(k, s.trunc().value());
            continue;
        }
        const auto& lead = s.terms().front();
        if (zero_status_of(lead.coeff) == ZeroStatus::kMaybeZero)
            throw AmbiguousZeroError("newton polygon: undecidable dot at xi^" +
                                     std::to_string(k));
        ds.push_back(Dot<C>{k, lead.exp, lead.coeff});
    }
    return build_polygon_from_dots(std::move(ds), std::move(unknown));
}

// Shape comparison: same vertices, co-slopes and dot positions on every
// edge (coefficients not compared). This is the polygon equality used by
// the deformation checks.
template <class C>
bool polygon_shape_equal(const Polygon<C>& A, const Polygon<C>& B) {
    if (A.edges.size() != B.edges.size()) return false;
    for (size_t i = 0; i < A.edges.size(); ++i) {
        const auto& a = A.edges[i];
        const auto& b = B.edges[i];
        if (a.kind != b.kind || !(a.coslope == b.coslope)) return false;
        if (a.left != b.left || a.right != b.right) return false;
        if (a.dots.size() != b.dots.size()) return false;
        for (size_t j = 0; j < a.dots.size(); ++j)
            if (a.dots[j].k != b.dots[j].k || a.dots[j].q != b.dots[j].q) return false;
    }
    return true;
}

}  // namespace puiseux

#endif
