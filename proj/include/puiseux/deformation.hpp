#ifndef PUISEUX_DEFORMATION_HPP
#define PUISEUX_DEFORMATION_HPP

#include <algorithm>
#include <future>
#include <string>
#include <vector>

#include "puiseux/stability.hpp"

namespace puiseux {

namespace detail {

inline bool series_exact(const PuiseuxSeries& s) {
    for (const auto& t : s.terms())
        if (!t.coeff.is_exact()) return false;
    return true;
}

inline std::string polygon_signature(const Polygon<Coeff>& P) {
    std::string s;
    for (const auto& e : P.edges) {
        s += edge_kind_name(e.kind);
        s += ":" + e.coslope.str();
        s += ":(" + std::to_string(e.left.first) + "," + e.left.second.get_str() + ")";
        s += "(" + std::to_string(e.right.first) + "," + e.right.second.get_str() + ")";
        s += "[";
        for (const auto& d : e.dots)
            s += std::to_string(d.k) + "," + d.q.get_str() + ";";
        s += "] ";
    }
    return s;
}

inline std::string pairs_signature(const std::vector<Rat>& pairs) {
    std::string s = "{";
    for (const auto& p : pairs) s += p.get_str() + ",";
    return s + "}";
}

// Intrinsic per-root signature: multiplicity, weighted contact multiset,
// characteristic pairs of the separation-depth truncation.
inline std::vector<std::string> root_signatures(const KuoLuTree& tree) {
    std::vector<std::string> sigs;
    for (size_t i = 0; i < tree.branches.size(); ++i) {
        const auto& bi = tree.branches[i];
        std::vector<std::string> contacts;
        for (size_t j = 0; j < tree.branches.size(); ++j) {
            if (j == i) continue;
            ExtRat c = contact_order_series(bi.series, tree.branches[j].series);
            contacts.push_back(c.str() + "x" + std::to_string(tree.branches[j].multiplicity));
        }
        std::sort(contacts.begin(), contacts.end());
        std::string s = "m=" + std::to_string(bi.multiplicity) + " pairs=" +
                        pairs_signature(puiseux_pairs(bi.series.deleted_above(
                            bi.separation_depth))) +
                        " contacts=";
        for (const auto& c : contacts) s += c + ";";
        sigs.push_back(std::move(s));
    }
    std::sort(sigs.begin(), sigs.end());
    return sigs;
}

// Invariants of a critical class that the Fundamental Lemma asserts are
// t-independent: m_crit, L, h, characteristic pairs, and (away from the
// multiple-root classes) the full polygon at the canonical coordinate.
inline std::vector<std::string> critical_signatures(const KuoLuTree& tree, long tiny) {
    std::vector<std::string> sigs;
    for (const auto& cp : tree.critical) {
        std::string s = "m=" + std::to_string(cp.multiplicity) + " L=" + cp.loja.str() +
                        " h=" + cp.height.str() +
                        " pairs=" + pairs_signature(puiseux_pairs(cp.coordinate));
        if (cp.bar >= 0) {
            XiPolyC psi = tree.phi.recentered(cp.coordinate).cleaned(tiny);
            s += " NP=" + polygon_signature(build_polygon(psi, tiny));
        }
        sigs.push_back(std::move(s));
    }
    std::sort(sigs.begin(), sigs.end());
    return sigs;
}

}  // namespace detail

// Morse-stability analysis of a one-parameter deformation F(x,y,t):
// analyze phi_0, clear every critical point by Tschirnhausen translations,
// and check every edge-polynomial family per the definition-level
// conditions. The Fundamental Lemma is the bridge: the verdict is the
// edge-family criterion.
inline StabilityReport check_deformation(const PolyXYT& F, EngineOptions opts = {}) {
    for (const auto& [k, c] : F.terms)
        if (std::get<0>(k) == 0 && std::get<1>(k) == 0)
            throw Error("check_deformation: F(0,0,t) must vanish identically");
    PolyXYT f0 = F.specialize_t(0);
    if (f0.zero()) throw Error("check_deformation: F(.,.,0) is zero");

    StabilityReport rep;
    XiPolyC phi0 = f0.to_xi();
    EngineOptions o = opts;
    KuoLuTree tree;
    for (int tries = 0;; ++tries) {
        try {
            tree = analyze(phi0, o);
            break;
        } catch (const TruncationError&) {
            if (tries >= 2) throw;
            o.extra_steps += 6;
        }
    }
    long tiny = -static_cast<long>(o.prec) / 2;
    XiPolyT Phi = F.to_xi_family();

    struct CpOutcome {
        std::vector<FamilyReport> families;
        std::vector<Witness> witnesses;
        std::vector<std::string> notes;
    };
    auto process_cp = [&](const CriticalPoint& cp) {
        CpOutcome out;
        std::string label = "critical point " + series_str(cp.coordinate);
        if (!cp.coordinate.trunc().is_infinite()) {
            out.notes.push_back(label + ": coordinate only known to finite depth");
            return out;
        }
        XiPolyC psi0 = phi0.recentered(cp.coordinate).cleaned(tiny);
        Polygon<Coeff> P0 = build_polygon(psi0, tiny);
        XiPolyT psit = Phi.recentered(lift_to_family(cp.coordinate)).cleaned(tiny);
        ClearResult cl;
        try {
            cl = tschirnhausen_clear(psit, P0);
        } catch (const TruncationError& e) {
            out.notes.push_back(label + ": " + e.what());
            return out;
        }
        if (cl.bad_dot) {
            Witness w = *cl.bad_dot;
            w.detail = label + ": " + w.detail;
            out.witnesses.push_back(std::move(w));
            return out;
        }
        for (const Edge<Coeff>* e : P0.proper_edges()) {
            std::string why;
            auto fam = edge_family(cl.cleared, *e, &why);
            FamilyReport fr;
            std::string where = label + ", edge of co-slope " + e->coslope.str();
            if (!fam) {
                fr.verdict = Verdict::Inconclusive;
                fr.family = where + " (" + why + ")";
            } else {
                fr = check_poly_family(*fam);
                fr.family = where + ": " + fr.family;
            }
            out.families.push_back(std::move(fr));
        }
        return out;
    };

    std::vector<CpOutcome> outcomes(tree.critical.size());
    if (o.jobs > 1 && tree.critical.size() > 1) {
        std::vector<std::future<CpOutcome>> futs;
        futs.reserve(tree.critical.size());
        for (const auto& cp : tree.critical)
            futs.push_back(std::async(std::launch::async, process_cp, std::cref(cp)));
        for (size_t i = 0; i < futs.size(); ++i) outcomes[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < tree.critical.size(); ++i)
            outcomes[i] = process_cp(tree.critical[i]);
    }

    bool any_unstable = false;
    bool any_inconclusive = false;
    bool any_cond2_unknown = false;
    bool any_cond2_false = false;
    for (auto& out : outcomes) {
        for (auto& n : out.notes) {
            any_inconclusive = true;
            rep.notes.push_back(std::move(n));
        }
        for (auto& w : out.witnesses) {
            any_unstable = true;
            rep.witnesses.push_back(std::move(w));
        }
        for (auto& fr : out.families) {
            switch (fr.verdict) {
                case Verdict::Unstable: any_unstable = true; break;
                case Verdict::Inconclusive: any_inconclusive = true; break;
                case Verdict::AlmostMorseStable:
                    if (fr.cond2 == Tri::False) any_cond2_false = true;
                    if (fr.cond2 == Tri::Unknown) any_cond2_unknown = true;
                    break;
                case Verdict::MorseStable: break;
            }
            rep.families.push_back(std::move(fr));
        }
    }

    if (any_unstable)
        rep.verdict = Verdict::Unstable;
    else if (any_inconclusive)
        rep.verdict = Verdict::Inconclusive;
    else if (any_cond2_false || any_cond2_unknown) {
        rep.verdict = Verdict::AlmostMorseStable;
        rep.morse_part_inconclusive = any_cond2_unknown && !any_cond2_false;
    } else {
        rep.verdict = Verdict::MorseStable;
    }

    // Corollary consistency: the root deformations keep their Newton
    // polygons at a sampled parameter value.
    if (rep.verdict == Verdict::MorseStable || rep.verdict == Verdict::AlmostMorseStable) {
        try {
            GaussRat tau(rat(1, 16));
            KuoLuTree tt = analyze(F.specialize_t(tau).to_xi(), o);
            if (detail::root_signatures(tree) != detail::root_signatures(tt))
                rep.notes.push_back(
                    "corollary check: root structure changed at t=1/16 (flagged)");
        } catch (const Error& e) {
            rep.notes.push_back(std::string("corollary check skipped: ") + e.what());
        }
    }
    return rep;
}

// Recompute the full structure of phi_t at the sampled parameter values and
// compare every deformation invariant against t = 0.
struct LemmaCheck {
    Rat t;
    bool ok = true;
    std::vector<std::string> mismatches;
};

struct LemmaReport {
    bool ok = true;
    std::vector<LemmaCheck> checks;
};

inline LemmaReport verify_fundamental_lemma(const PolyXYT& F, const std::vector<Rat>& ts,
                                            EngineOptions opts = {}) {
    StabilityReport base = check_deformation(F, opts);
    if (base.verdict != Verdict::MorseStable && base.verdict != Verdict::AlmostMorseStable)
        throw Error("verify_fundamental_lemma: family is not (almost) Morse stable");

    long tiny = -static_cast<long>(opts.prec) / 2;
    KuoLuTree t0 = analyze(F.specialize_t(0).to_xi(), opts);
    auto roots0 = detail::root_signatures(t0);
    auto crit0 = detail::critical_signatures(t0, tiny);

    LemmaReport rep;
    for (const auto& tv : ts) {
        LemmaCheck chk;
        chk.t = tv;
        KuoLuTree tt = analyze(F.specialize_t(GaussRat(tv)).to_xi(), opts);
        auto roots = detail::root_signatures(tt);
        auto crit = detail::critical_signatures(tt, tiny);
        if (roots != roots0) {
            chk.ok = false;
            chk.mismatches.push_back("root signatures differ at t=" + tv.get_str());
        }
        if (crit != crit0) {
            chk.ok = false;
            chk.mismatches.push_back("critical-point signatures differ at t=" +
                                     tv.get_str());
        }
        if (tt.critical.size() != t0.critical.size()) {
            chk.ok = false;
            chk.mismatches.push_back("critical point count changed at t=" + tv.get_str());
        }
        rep.ok = rep.ok && chk.ok;
        rep.checks.push_back(std::move(chk));
    }
    return rep;
}

}  // namespace puiseux

#endif
