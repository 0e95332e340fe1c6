#ifndef PUISEUX_STABILITY_HPP
#define PUISEUX_STABILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "puiseux/polyxy.hpp"
#include "puiseux/tree.hpp"
#include "puiseux/truncation.hpp"

namespace puiseux {

enum class Verdict { MorseStable, AlmostMorseStable, Unstable, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::MorseStable: return "MorseStable";
        case Verdict::AlmostMorseStable: return "AlmostMorseStable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct Witness {
    int condition = 0;  // failing stability condition 1/2/3; 0 = structural
    std::string detail;
    std::optional<std::pair<int, Rat>> dot;  // uncleared Newton dot (k, q)

    Witness() = default;
    Witness(int c, std::string d) : condition(c), detail(std::move(d)) {}
    Witness(int c, std::string d, std::pair<int, Rat> p)
        : condition(c), detail(std::move(d)), dot(std::move(p)) {}
};

// One-parameter polynomial family p_t(z) with exact t-polynomial
// coefficients: the z-major coefficient vector.
using PolyFamily = Poly<QPoly>;

inline std::string qpoly_str(const QPoly& p, const char* var = "z") {
    if (p.zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        if (p.at(i).is_zero()) continue;
        std::string cs = p.at(i).str();
        std::string term;
        if (i == 0)
            term = cs;
        else {
            std::string base = i == 1 ? var : std::string(var) + "^" + std::to_string(i);
            if (cs == "1")
                term = base;
            else if (cs == "-1")
                term = "-" + base;
            else
                term = (cs.find_first_of("+-", 1) != std::string::npos ? "(" + cs + ")" : cs) +
                       "*" + base;
        }
        if (s.empty())
            s = term;
        else if (term[0] == '-')
            s += " - " + term.substr(1);
        else
            s += " + " + term;
    }
    return s;
}

inline std::string family_str(const PolyFamily& p) {
    if (p.zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        if (p.at(i).zero()) continue;
        std::string cs = qpoly_str(p.at(i), "t");
        std::string term;
        bool composite = cs.find_first_of("+-", 1) != std::string::npos ||
                         cs.find('t') != std::string::npos;
        if (i == 0)
            term = composite ? "(" + cs + ")" : cs;
        else {
            std::string base = i == 1 ? "z" : "z^" + std::to_string(i);
            if (cs == "1")
                term = base;
            else if (cs == "-1")
                term = "-" + base;
            else
                term = (composite ? "(" + cs + ")" : cs) + "*" + base;
        }
        if (s.empty())
            s = term;
        else if (term[0] == '-' && term.find_first_of("+-", 1) == std::string::npos)
            s += " - " + term.substr(1);
        else
            s += " + " + term;
    }
    return s;
}

struct CriticalBranchReport {
    std::string point;           // the critical locus piece (polynomial in z)
    int multiplicity;            // m_crit at t = 0
    Tri stable = Tri::True;      // condition (1) for this piece
    std::string carrying_factor; // factor of p_t' carrying the deformation
};

struct FamilyReport {
    std::string family;
    Verdict verdict = Verdict::MorseStable;
    Tri cond1 = Tri::True, cond2 = Tri::True, cond3 = Tri::True;
    std::vector<CriticalBranchReport> points;
    std::vector<Witness> witnesses;
};

struct StabilityReport {
    Verdict verdict = Verdict::MorseStable;
    bool morse_part_inconclusive = false;  // (1),(3) hold but (2) undecided
    std::vector<FamilyReport> families;
    std::vector<Witness> witnesses;
    std::vector<std::string> notes;
};

namespace detail {

inline QPoly specialize0(const Poly<QPoly>& p) {
    QPoly r;
    r.c.reserve(p.c.size());
    for (const auto& c : p.c) r.c.push_back(c.at(0));
    r.normalize();
    return r;
}

inline Poly<QPoly> derivative_z(const Poly<QPoly>& p) {
    Poly<QPoly> r;
    for (size_t i = 1; i < p.c.size(); ++i) {
        QPoly k = p.c[i];
        for (size_t j = 1; j < i; ++j) k = k + p.c[i];
        r.c.push_back(k);
    }
    r.normalize();
    return r;
}

struct Piece {
    QPoly q;   // squarefree part of the critical locus with uniform behavior
    int kappa; // m_crit of each root
    std::vector<int> mult_in;  // multiplicity of the piece's roots in each g_j(.,0)
};

// Critical value polynomial: V(w) = res_z(q(z), w - p0(z)); its roots are
// the values p0 takes on the roots of q.
inline QPoly critical_value_poly(const QPoly& q, const QPoly& p0) {
    using WF = RatFunc<GaussRat>;
    Poly<WF> A;
    A.c.reserve(q.c.size());
    for (const auto& c : q.c) A.c.push_back(WF(c));
    A.normalize();
    Poly<WF> B;  // w - p0(z) as a polynomial in z over Q(i)(w)
    QPoly wpoly(std::vector<GaussRat>{GaussRat(0), GaussRat(1)});
    B.c.reserve(std::max<size_t>(p0.c.size(), 1));
    for (size_t i = 0; i < p0.c.size(); ++i) B.c.push_back(WF(QPoly(-p0.c[i])));
    if (B.c.empty()) B.c.push_back(WF());
    B.c[0] = B.c[0] + WF(wpoly);
    B.normalize();
    WF res = resultant(A, B);
    QPoly out = res.num;
    return monic(out);
}

}  // namespace detail

// Definition-level Morse stability of a polynomial family p_t(z), decided
// symbolically: squarefree structure of p_t' over Q(i)(t) against the
// critical points of p_0.
inline FamilyReport check_poly_family(const PolyFamily& fam) {
    FamilyReport rep;
    rep.family = family_str(fam);
    if (fam.zero() || fam.degree() < 1) {
        rep.verdict = Verdict::Inconclusive;
        rep.witnesses.push_back(Witness{0, "family constant in z"});
        return rep;
    }
    QPoly p0 = detail::specialize0(fam);
    if (p0.degree() < 1) {
        rep.verdict = Verdict::Inconclusive;
        rep.witnesses.push_back(Witness{0, "t=0 fiber degenerates to a constant"});
        return rep;
    }
    Poly<QPoly> pt_prime = detail::derivative_z(fam);
    QPoly p0_prime = detail::specialize0(pt_prime);
    if (p0_prime.zero()) {
        rep.verdict = Verdict::Inconclusive;
        rep.witnesses.push_back(Witness{0, "p_0' vanishes identically"});
        return rep;
    }

    // squarefree structure of p_t' over Q(i)(t)
    FPoly lifted = lift_to_field(pt_prime);
    auto decomp = squarefree_decompose(lifted);
    struct Factor {
        Poly<QPoly> g;   // primitive in t
        QPoly g0;        // specialization at t = 0
        int e;           // multiplicity in p_t'
        bool drop;       // z-degree drops at t = 0
    };
    std::vector<Factor> factors;
    for (const auto& [f, e] : decomp) {
        Factor fac;
        fac.g = clear_denominators(f);
        fac.g0 = detail::specialize0(fac.g);
        fac.e = e;
        fac.drop = fac.g0.degree() != fac.g.degree();
        factors.push_back(std::move(fac));
    }

    // critical points of p_0 grouped by multiplicity, refined by their
    // multiplicity inside each g_j(.,0)
    std::vector<detail::Piece> pieces;
    for (const auto& [s, kappa] : squarefree_decompose(p0_prime)) {
        detail::Piece pc;
        pc.q = s;
        pc.kappa = kappa;
        pc.mult_in.assign(factors.size(), 0);
        pieces.push_back(std::move(pc));
    }
    for (size_t j = 0; j < factors.size(); ++j) {
        if (factors[j].g0.degree() < 1) continue;
        for (const auto& [w, mu] : squarefree_decompose(factors[j].g0)) {
            std::vector<detail::Piece> next;
            for (auto& pc : pieces) {
                QPoly g = poly_gcd(pc.q, w);
                if (g.degree() < 1) {
                    next.push_back(std::move(pc));
                    continue;
                }
                detail::Piece hit;
                hit.q = g;
                hit.kappa = pc.kappa;
                hit.mult_in = pc.mult_in;
                hit.mult_in[j] = mu;
                if (g.degree() == pc.q.degree()) {
                    next.push_back(std::move(hit));
                } else {
                    detail::Piece rest;
                    rest.q = pc.q / g;
                    rest.kappa = pc.kappa;
                    rest.mult_in = pc.mult_in;
                    next.push_back(std::move(hit));
                    next.push_back(std::move(rest));
                }
            }
            pieces = std::move(next);
        }
    }

    QPoly pmult = poly_gcd(p0, p0_prime);  // multiple roots of p_0
    FPoly pt_field = lift_to_field(fam);

    struct PieceInfo {
        int piece;
        int carrier;        // index into factors, -1 when unstable
        QPoly values;       // critical value polynomial V(w)
        std::optional<QRatFunc> value_t;  // p_t on the carrier when z-free
    };
    std::vector<PieceInfo> infos;

    for (size_t pi = 0; pi < pieces.size(); ++pi) {
        auto& pc = pieces[pi];
        int sum = 0;
        for (size_t j = 0; j < factors.size(); ++j) sum += factors[j].e * pc.mult_in[j];
        if (sum != pc.kappa)
            throw InternalError("stability: factor multiplicities inconsistent");
        // condition (1): exactly one carrier with e_j = kappa, mult 1, no
        // other factor through the point, no degree drop of the carrier
        int carrier = -1;
        bool clean = true;
        for (size_t j = 0; j < factors.size(); ++j) {
            if (pc.mult_in[j] == 0) continue;
            if (factors[j].e == pc.kappa && pc.mult_in[j] == 1 && carrier < 0)
                carrier = static_cast<int>(j);
            else
                clean = false;
        }
        bool stable = clean && carrier >= 0 && !factors[carrier].drop;
        CriticalBranchReport cbr;
        cbr.point = qpoly_str(pc.q);
        cbr.multiplicity = pc.kappa;
        cbr.stable = stable ? Tri::True : Tri::False;
        if (carrier >= 0) cbr.carrying_factor = family_str(factors[carrier].g);
        rep.points.push_back(cbr);
        if (!stable) {
            rep.cond1 = Tri::False;
            std::string why = carrier >= 0 && factors[carrier].drop
                                  ? "carrying factor loses degree at t=0 (branch escapes)"
                                  : "critical point splits for t != 0";
            rep.witnesses.push_back(
                Witness{1, "critical points of " + qpoly_str(pc.q) + " (m_crit=" +
                               std::to_string(pc.kappa) + "): " + why});
        }
        // condition (3): multiple roots of p_0 must stay roots
        QPoly qmult = poly_gcd(pc.q, pmult);
        if (qmult.degree() >= 1) {
            bool ok = false;
            if (stable) {
                FPoly gf = lift_to_field(factors[carrier].g);
                FPoly rem = divmod(pt_field, gf).second;
                if (rem.zero()) {
                    ok = true;
                } else {
                    // refined check through the common factor of carrier and p_t
                    FPoly h = poly_gcd(gf, pt_field);
                    if (h.degree() >= 1) {
                        Poly<QPoly> hint = clear_denominators(h);
                        QPoly h0 = detail::specialize0(hint);
                        ok = h0.degree() == hint.degree() &&
                             poly_gcd(qmult, h0).degree() == qmult.degree();
                    }
                }
            }
            if (!ok) {
                rep.cond3 = Tri::False;
                rep.witnesses.push_back(
                    Witness{3, "multiple root(s) of p_0 at " + qpoly_str(qmult) +
                                   " do not remain roots of p_t"});
            }
        }
        PieceInfo info;
        info.piece = static_cast<int>(pi);
        info.carrier = stable ? carrier : -1;
        info.values = detail::critical_value_poly(pc.q, p0);
        if (stable) {
            FPoly rem = divmod(pt_field, lift_to_field(factors[carrier].g)).second;
            if (rem.degree() <= 0)
                info.value_t = rem.zero() ? QRatFunc() : rem.at(0);
        }
        infos.push_back(std::move(info));
    }

    // condition (2): pairs of critical points with equal critical values
    for (size_t a = 0; a < infos.size(); ++a) {
        for (size_t b = a; b < infos.size(); ++b) {
            bool pair_exists;
            if (a == b) {
                // within one piece: repeated values show up as a square in V
                const QPoly& V = infos[a].values;
                if (pieces[infos[a].piece].q.degree() < 2) continue;
                pair_exists = poly_gcd(V, V.derivative()).degree() >= 1;
            } else {
                pair_exists =
                    poly_gcd(infos[a].values, infos[b].values).degree() >= 1;
            }
            if (!pair_exists) continue;
            if (rep.cond1 == Tri::False) continue;  // already unstable
            bool both_const = infos[a].value_t.has_value() && infos[b].value_t.has_value();
            if (a == b) {
                if (infos[a].value_t.has_value()) continue;  // all values equal identically
                if (rep.cond2 == Tri::True) rep.cond2 = Tri::Unknown;
                rep.witnesses.push_back(Witness{
                    2, "equal critical values inside " + qpoly_str(pieces[infos[a].piece].q) +
                           ": no symbolic certificate for p_t(c_t) = p_t(c_t')"});
            } else if (both_const) {
                if (!(*infos[a].value_t == *infos[b].value_t)) {
                    rep.cond2 = Tri::False;
                    rep.witnesses.push_back(Witness{
                        2, "critical values of " + qpoly_str(pieces[infos[a].piece].q) +
                               " and " + qpoly_str(pieces[infos[b].piece].q) +
                               " agree at t=0 but diverge for t != 0"});
                }
            } else {
                if (rep.cond2 == Tri::True) rep.cond2 = Tri::Unknown;
                rep.witnesses.push_back(Witness{
                    2, "equal critical values across " + qpoly_str(pieces[infos[a].piece].q) +
                           " and " + qpoly_str(pieces[infos[b].piece].q) +
                           ": no symbolic certificate"});
            }
        }
    }

    if (rep.cond1 == Tri::False || rep.cond3 == Tri::False)
        rep.verdict = Verdict::Unstable;
    else if (rep.cond2 == Tri::True)
        rep.verdict = Verdict::MorseStable;
    else
        rep.verdict = Verdict::AlmostMorseStable;
    return rep;
}

// --- Tschirnhausen clearing -------------------------------------------------

struct ClearResult {
    TSeries shift;      // B_t, zero at t = 0
    XiPolyT cleared;    // the family recentered by the composite shift
    std::optional<Witness> bad_dot;  // a t-dot below the polygon surviving all shifts
};

namespace detail {

// t-dependent part of a TPoly (degrees >= 1), as a TPoly.
inline TPoly t_part(const TPoly& p) {
    TPoly r = p;
    if (!r.c.empty()) r.c[0] = Coeff(0);
    r.normalize();
    return r;
}

inline bool has_t_part(const TPoly& p) { return !t_part(p).zero(); }

}  // namespace detail

// The "edging forward" normalization: recursively kill the t-dependence of
// the xi^{m_k - 1} coefficient with the unique translation against the
// vertex term a y^{q_k} xi^{m_k}, edge by edge, then report any t-dot of
// the family left strictly below the t=0 polygon.
inline ClearResult tschirnhausen_clear(const XiPolyT& family, const Polygon<Coeff>& P0) {
    ClearResult res;
    res.cleared = family;
    res.shift = TSeries::zero();

    // One edging step: kill the t-dependence of the xi^{mk-1} coefficient
    // by translations of order >= prev_h against the vertex term a y^qk xi^mk.
    auto edging_step = [&res](int mk, const Rat& qk, const Coeff& a,
                              const ExtRat& prev_h) -> bool {
        Coeff scale = Coeff(GaussRat(Rat(mk))) * a;
        for (int guard = 0;; ++guard) {
            if (guard > 500)
                throw TruncationError("tschirnhausen: shift did not stabilize");
            if (mk - 1 > res.cleared.degree()) return true;
            const TSeries& cur = res.cleared.coeff(mk - 1);
            std::optional<std::pair<Rat, TPoly>> lowest;
            for (const auto& term : cur.terms()) {
                TPoly tp = detail::t_part(term.coeff);
                if (zero_status_of(tp) != ZeroStatus::kZero) {
                    lowest = {term.exp, tp};
                    break;
                }
            }
            if (!lowest) return true;
            Rat beta_exp = lowest->first - qk;
            if (sgn(beta_exp) <= 0 || ExtRat(beta_exp) < prev_h) {
                res.bad_dot = Witness{
                    1,
                    "t-dot at (" + std::to_string(mk - 1) + ", " + lowest->first.get_str() +
                        ") cannot be cleared by any admissible Tschirnhausen shift",
                    std::make_pair(mk - 1, lowest->first)};
                return false;
            }
            TPoly beta;
            beta.c.reserve(lowest->second.c.size());
            for (const auto& e : lowest->second.c) beta.c.push_back(-e / scale);
            beta.normalize();
            TSeries shift_term = TSeries::monomial(beta_exp, beta);
            res.cleared = res.cleared.recentered(shift_term);
            res.shift = res.shift + shift_term;
        }
    };

    auto proper = P0.proper_edges();
    for (size_t k = 0; k < proper.size(); ++k) {
        const Edge<Coeff>& ek = *proper[k];
        int mk = ek.right.first;  // vertex V_k = (m_k, q_k), left vertex of E_{k-1}
        Rat qk = ek.right.second;
        ExtRat prev_h = k == 0 ? ExtRat(Rat(0)) : proper[k - 1]->coslope;
        if (mk >= 1) {
            const Dot<Coeff>* vd = P0.dot_at(mk);
            if (vd == nullptr || vd->q != qk)
                throw InternalError("tschirnhausen: vertex without dot");
            if (!edging_step(mk, qk, vd->coeff, prev_h)) return res;
        }
        // every stored t-dot must lie on or above the line through E_k
        Rat h = as_rat(ek.coslope, "tschirnhausen co-slope");
        Rat L = ek.right.second + Rat(ek.right.first) * h;
        for (int kk = 0; kk <= res.cleared.degree(); ++kk) {
            for (const auto& term : res.cleared.coeff(kk).terms()) {
                if (!detail::has_t_part(term.coeff)) continue;
                if (term.exp + Rat(kk) * h < L) {
                    res.bad_dot =
                        Witness{1,
                                "t-dot at (" + std::to_string(kk) + ", " +
                                    term.exp.get_str() + ") lies below the Newton polygon",
                                std::make_pair(kk, term.exp)};
                    return res;
                }
            }
        }
    }
    // Final step at the last vertex when phi_0 has a multiple root there:
    // clearing "below L(E_l) = everything" follows the moving root, after
    // which no t-dot may remain left of the vertical edge.
    int ml = P0.root_multiplicity();
    if (ml >= 1) {
        ExtRat prev_h =
            proper.empty() ? ExtRat(Rat(0)) : proper.back()->coslope;
        const Dot<Coeff>* vd = P0.dot_at(ml);
        if (vd == nullptr || vd->q != P0.last_vertex.second)
            throw InternalError("tschirnhausen: last vertex without dot");
        if (!edging_step(ml, P0.last_vertex.second, vd->coeff, prev_h)) return res;
        for (int kk = 0; kk < ml; ++kk) {
            for (const auto& term : res.cleared.coeff(kk).terms()) {
                if (!detail::has_t_part(term.coeff)) continue;
                res.bad_dot = Witness{3,
                                      "t-dot at (" + std::to_string(kk) + ", " +
                                          term.exp.get_str() +
                                          ") left of the vertical edge: the multiple root "
                                          "does not persist",
                                      std::make_pair(kk, term.exp)};
                return res;
            }
        }
    }
    return res;
}

// Extract the one-parameter edge family P_E(z; t) from a cleared family:
// every lattice point on the edge's supporting line contributes its
// t-polynomial coefficient.
inline std::optional<PolyFamily> edge_family(const XiPolyT& cleared, const Edge<Coeff>& e,
                                             std::string* why_not) {
    Rat h = as_rat(e.coslope, "edge family co-slope");
    Rat L = e.right.second + Rat(e.right.first) * h;
    PolyFamily fam;
    fam.c.assign(e.right.first + 1, QPoly());
    for (int k = e.left.first; k <= e.right.first; ++k) {
        Rat q = L - Rat(k) * h;
        if (sgn(q) < 0) continue;
        if (k > cleared.degree()) continue;
        TPoly c;
        const TSeries& s = cleared.coeff(k);
        bool found = false;
        for (const auto& term : s.terms())
            if (term.exp == q) {
                c = term.coeff;
                found = true;
                break;
            }
        if (!found) {
            if (!(ExtRat(q) < s.trunc())) {
                if (why_not) *why_not = "edge coefficient beyond stored depth";
                return std::nullopt;
            }
            continue;
        }
        QPoly qc;
        qc.c.reserve(c.c.size());
        for (const auto& entry : c.c) {
            if (entry.is_exact()) {
                qc.c.push_back(entry.exact());
            } else {
                if (auto g = snap_to_gauss(entry.ball());
                    g && entry.ball().contains(*g) &&
                    entry.ball().radius_below_2exp(-40)) {
                    qc.c.push_back(*g);
                } else {
                    if (why_not) *why_not = "edge family has irrational coefficients";
                    return std::nullopt;
                }
            }
        }
        qc.normalize();
        fam.c[k] = qc;
    }
    fam.normalize();
    return fam;
}

}  // namespace puiseux

#endif
