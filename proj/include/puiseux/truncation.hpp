#ifndef PUISEUX_TRUNCATION_HPP
#define PUISEUX_TRUNCATION_HPP

#include <string>
#include <vector>

#include "puiseux/expansion.hpp"
#include "puiseux/polyxy.hpp"

namespace puiseux {

struct TruncationResult {
    std::vector<RootBranch> truncated_roots;  // (zeta_hat_i, m_i)
    std::vector<Rat> e_values;                // e_i = max contact with the other roots
    PolyXYT fhat;                             // the root truncation, over the ground field
    std::vector<ExtRat> remainder_orders;     // O(R_i); +inf when R_i = 0
    std::vector<std::string> snap_log;        // ball -> rational reconstructions
    bool depth_capped = false;                // d = 1 with a genuine power series
};

struct DeformationFamily {
    PolyXYT F;              // the interpolating family in (x, y, t)
    ExtRat cap;             // y-depth to which the family represents the ideal one
    std::vector<std::string> snap_log;
};

namespace detail {

constexpr long kSnapRadiusExp = -40;

inline GaussRat collect_coeff(const Coeff& c, bool require_real, bool& snapped,
                              std::vector<std::string>* log, const char* where) {
    GaussRat g;
    if (c.is_exact()) {
        g = c.exact();
    } else {
        if (!c.ball().radius_below_2exp(kSnapRadiusExp))
            throw UnresolvedClusterError(
                std::string("collection: ball coefficient too wide to reconstruct (") +
                where + ")");
        auto cand = snap_to_gauss(c.ball());
        if (!cand || !c.ball().contains(*cand))
            throw UnresolvedClusterError(
                std::string("collection: no recognizable rational in ball (") + where + ")");
        g = *cand;
        snapped = true;
        if (log) log->push_back(std::string(where) + ": snapped " + c.ball().str() +
                                " -> " + g.str());
    }
    if (require_real && sgn(g.im) != 0)
        throw InternalError(std::string("collection: non-real coefficient for real input (") +
                            where + ")");
    return g;
}

// Collect a product of root factors into an exact polynomial. Exponents
// must come out integral (conjugation invariance); ball coefficients must
// snap to Gaussian rationals.
inline PolyXYT collect_xi(const XiPolyC& prod, bool require_real, bool& snapped,
                          std::vector<std::string>* log) {
    PolyXYT out;
    for (int k = 0; k <= prod.degree(); ++k) {
        for (const auto& t : prod.coeff(k).terms()) {
            std::string where = "x^" + std::to_string(k) + " y^" + t.exp.get_str();
            GaussRat g = collect_coeff(t.coeff, require_real, snapped, log, where.c_str());
            if (g.is_zero()) continue;  // conjugate cancellation inside a ball
            if (rat_den(t.exp) != 1 || sgn(t.exp) < 0)
                throw InternalError("collection: non-integral exponent y^" +
                                    t.exp.get_str() + " (conjugation invariance violated)");
            out.add_term(k, static_cast<int>(rat_num(t.exp).get_si()), 0, g);
        }
    }
    return out;
}

inline PolyXYT collect_xi_family(const XiPolyT& prod, bool require_real, bool& snapped,
                                 std::vector<std::string>* log) {
    PolyXYT out;
    for (int k = 0; k <= prod.degree(); ++k) {
        for (const auto& t : prod.coeff(k).terms()) {
            for (int d = 0; d <= t.coeff.degree(); ++d) {
                if (is_zero(t.coeff.at(d))) continue;
                std::string where = "x^" + std::to_string(k) + " y^" + t.exp.get_str() +
                                    " t^" + std::to_string(d);
                GaussRat g =
                    collect_coeff(t.coeff.at(d), require_real, snapped, log, where.c_str());
                if (g.is_zero()) continue;
                if (rat_den(t.exp) != 1 || sgn(t.exp) < 0)
                    throw InternalError("collection: non-integral exponent y^" +
                                        t.exp.get_str() +
                                        " (conjugation invariance violated)");
                out.add_term(k, static_cast<int>(rat_num(t.exp).get_si()), d, g);
            }
        }
    }
    return out;
}

struct TruncationParts {
    std::vector<RootBranch> branches;
    std::vector<PuiseuxSeries> zhat;
    std::vector<Rat> evals;
    XiPolyC prod;
    bool capped = false;
};

inline TruncationParts truncation_parts(const XiPolyC& phi, const EngineOptions& opts) {
    TruncationParts parts;
    parts.branches = expand_roots(phi, opts);
    size_t d = parts.branches.size();
    if (d == 1) {
        const auto& br = parts.branches[0];
        parts.zhat.push_back(br.series);
        parts.capped = !br.series.trunc().is_infinite();
        XiPolyC lin;
        lin.a.push_back(-br.series);
        lin.a.push_back(PuiseuxSeries::monomial(Rat(0), Coeff(1)));
        parts.prod = xi_pow(lin, static_cast<unsigned>(br.multiplicity));
        return parts;
    }
    for (const auto& br : parts.branches) {
        parts.evals.push_back(br.separation_depth);
        parts.zhat.push_back(br.series.deleted_above(br.separation_depth));
    }
    XiPolyC prod;
    prod.a.push_back(PuiseuxSeries::monomial(Rat(0), Coeff(1)));
    for (size_t i = 0; i < d; ++i) {
        XiPolyC lin;
        lin.a.push_back(-parts.zhat[i]);
        lin.a.push_back(PuiseuxSeries::monomial(Rat(0), Coeff(1)));
        prod = xi_mul(prod, xi_pow(lin, static_cast<unsigned>(parts.branches[i].multiplicity)));
    }
    parts.prod = prod;
    return parts;
}

}  // namespace detail

// The Puiseux root truncation of f: every root cut just past its maximal
// contact e_i with the other roots, then the product re-expanded over the
// ground field. Ball coefficients are reconstructed (snapped) to Gaussian
// rationals and the reconstruction is verified by recomputing at doubled
// precision.
inline TruncationResult root_truncation(const PolyXYT& f, EngineOptions opts = {}) {
    XiPolyC phi = f.to_xi();
    bool require_real = f.is_real();
    auto parts = detail::truncation_parts(phi, opts);

    TruncationResult res;
    res.e_values = parts.evals;
    res.depth_capped = parts.capped;
    bool snapped = false;
    res.fhat = detail::collect_xi(parts.prod, require_real, snapped, &res.snap_log);
    if (snapped) {
        EngineOptions o2 = opts;
        o2.prec = std::min<mpfr_prec_t>(opts.prec * 2, opts.max_prec);
        auto parts2 = detail::truncation_parts(phi, o2);
        bool snapped2 = false;
        PolyXYT fhat2 = detail::collect_xi(parts2.prod, require_real, snapped2, nullptr);
        if (!(fhat2 == res.fhat))
            throw UnresolvedClusterError(
                "root truncation: reconstruction unstable under precision doubling");
    }
    for (size_t i = 0; i < parts.branches.size(); ++i) {
        res.truncated_roots.push_back(RootBranch{parts.zhat[i], parts.branches[i].multiplicity,
                                                 parts.branches[i].separation_depth});
        PuiseuxSeries r = parts.branches[i].series - parts.zhat[i];
        res.remainder_orders.push_back(r.order_lower());
    }
    if (res.fhat.degree_x() != phi.mini_regular_order())
        throw InternalError("root truncation: x-degree of fhat differs from the order");
    return res;
}

// The Puiseux root deformation: F(x,y,t) = prod (x - zeta_i + t R_i)^{m_i}
// with unit 1. The branches are stored deep enough that the t=1 slice is
// exactly fhat; the family is a depth-capped representative beyond that.
inline DeformationFamily root_deformation_family(const PolyXYT& f, EngineOptions opts = {}) {
    XiPolyC phi = f.to_xi();
    bool require_real = f.is_real();

    // make sure the stored depth clears every y-exponent of fhat
    TruncationResult trunc = root_truncation(f, opts);
    EngineOptions o2 = opts;
    ExtRat target{Rat(trunc.fhat.degree_y() + 1)};
    if (o2.depth.is_finite()) target = max(target, o2.depth);
    o2.depth = target;

    auto parts = detail::truncation_parts(phi, o2);
    XiPolyT fam;
    fam.a.push_back(TSeries::monomial(Rat(0), TPoly(Coeff(1))));
    ExtRat cap = ExtRat::infinity();
    TPoly tmono = TPoly::monomial(Coeff(1), 1);
    for (size_t i = 0; i < parts.branches.size(); ++i) {
        PuiseuxSeries rem = parts.branches[i].series - parts.zhat[i];
        cap = min(cap, parts.branches[i].series.trunc());
        XiPolyT lin;
        lin.a.push_back(lift_to_family(-parts.branches[i].series) +
                        lift_to_family(rem) * tmono);
        lin.a.push_back(TSeries::monomial(Rat(0), TPoly(Coeff(1))));
        fam = xi_mul(fam, xi_pow(lin, static_cast<unsigned>(parts.branches[i].multiplicity)));
    }
    DeformationFamily out;
    bool snapped = false;
    out.F = detail::collect_xi_family(fam, require_real, snapped, &out.snap_log);
    out.cap = cap;
    if (snapped) {
        EngineOptions o3 = o2;
        o3.prec = std::min<mpfr_prec_t>(o2.prec * 2, o2.max_prec);
        auto parts2 = detail::truncation_parts(phi, o3);
        XiPolyT fam2;
        fam2.a.push_back(TSeries::monomial(Rat(0), TPoly(Coeff(1))));
        for (size_t i = 0; i < parts2.branches.size(); ++i) {
            PuiseuxSeries rem = parts2.branches[i].series - parts2.zhat[i];
            XiPolyT lin;
            lin.a.push_back(lift_to_family(-parts2.branches[i].series) +
                            lift_to_family(rem) * tmono);
            lin.a.push_back(TSeries::monomial(Rat(0), TPoly(Coeff(1))));
            fam2 = xi_mul(fam2,
                          xi_pow(lin, static_cast<unsigned>(parts2.branches[i].multiplicity)));
        }
        bool snapped2 = false;
        PolyXYT F2 = detail::collect_xi_family(fam2, require_real, snapped2, nullptr);
        if (!(F2 == out.F))
            throw UnresolvedClusterError(
                "root deformation: reconstruction unstable under precision doubling");
    }
    return out;
}

}  // namespace puiseux

#endif
