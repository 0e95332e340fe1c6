#ifndef PUISEUX_POLYXY_HPP
#define PUISEUX_POLYXY_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/xi_poly.hpp"

namespace puiseux {

// Sparse exact polynomial in x, y and optionally t, the input/output
// currency of the CLI and the deformation machinery.
struct PolyXYT {
    using Key = std::tuple<int, int, int>;  // (x, y, t) exponents
    std::map<Key, GaussRat> terms;

    static PolyXYT mono(int i, int j, int k, GaussRat c) {
        PolyXYT p;
        if (!c.is_zero()) p.terms[{i, j, k}] = std::move(c);
        return p;
    }

    bool zero() const { return terms.empty(); }
    bool uses_t() const {
        for (const auto& [k, c] : terms)
            if (std::get<2>(k) != 0) return true;
        return false;
    }
    bool is_real() const {
        for (const auto& [k, c] : terms)
            if (sgn(c.im) != 0) return false;
        return true;
    }
    int degree_x() const {
        int d = -1;
        for (const auto& [k, c] : terms) d = std::max(d, std::get<0>(k));
        return d;
    }
    int degree_y() const {
        int d = -1;
        for (const auto& [k, c] : terms) d = std::max(d, std::get<1>(k));
        return d;
    }
    int degree_t() const {
        int d = -1;
        for (const auto& [k, c] : terms) d = std::max(d, std::get<2>(k));
        return d;
    }

    void add_term(int i, int j, int k, const GaussRat& c) {
        Key key{i, j, k};
        auto it = terms.find(key);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend PolyXYT operator+(const PolyXYT& a, const PolyXYT& b) {
        PolyXYT r = a;
        for (const auto& [k, c] : b.terms)
            r.add_term(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
        return r;
    }
    friend PolyXYT operator-(const PolyXYT& a) {
        PolyXYT r = a;
        for (auto& [k, c] : r.terms) c = -c;
        return r;
    }
    friend PolyXYT operator-(const PolyXYT& a, const PolyXYT& b) { return a + (-b); }
    friend PolyXYT operator*(const PolyXYT& a, const PolyXYT& b) {
        PolyXYT r;
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms)
                r.add_term(std::get<0>(ka) + std::get<0>(kb),
                           std::get<1>(ka) + std::get<1>(kb),
                           std::get<2>(ka) + std::get<2>(kb), ca * cb);
        return r;
    }
    PolyXYT pow(unsigned k) const {
        PolyXYT r = mono(0, 0, 0, GaussRat(1));
        PolyXYT base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            if (k >>= 1u) base = base * base;
        }
        return r;
    }
    friend bool operator==(const PolyXYT& a, const PolyXYT& b) {
        return (a - b).zero();
    }

    PolyXYT specialize_t(const GaussRat& t0) const {
        PolyXYT r;
        for (const auto& [k, c] : terms) {
            GaussRat v = c;
            for (int e = 0; e < std::get<2>(k); ++e) v *= t0;
            r.add_term(std::get<0>(k), std::get<1>(k), 0, v);
        }
        return r;
    }

    // y -> y + c x (the mini-regularizing shear)
    PolyXYT shear_y(long c) const {
        if (c == 0) return *this;
        PolyXYT r;
        PolyXYT sub = mono(0, 1, 0, GaussRat(1)) + mono(1, 0, 0, GaussRat(Rat(c)));
        for (const auto& [k, cf] : terms) {
            PolyXYT term = mono(std::get<0>(k), 0, std::get<2>(k), cf) *
                           sub.pow(static_cast<unsigned>(std::get<1>(k)));
            r = r + term;
        }
        return r;
    }

    // Lowest (x,y)-degree of the t=0 slice.
    int order_xy() const {
        int m = -1;
        for (const auto& [k, c] : terms) {
            if (std::get<2>(k) != 0) continue;
            int d = std::get<0>(k) + std::get<1>(k);
            if (m < 0 || d < m) m = d;
        }
        return m;
    }

    XiPolyC to_xi() const {
        if (uses_t()) throw Error("polynomial uses t where a plane curve is expected");
        XiPolyC phi;
        for (const auto& [k, c] : terms) {
            int i = std::get<0>(k);
            if (static_cast<int>(phi.a.size()) <= i) phi.a.resize(i + 1);
            phi.a[i] = phi.a[i] + PuiseuxSeries::monomial(Rat(std::get<1>(k)), Coeff(c));
        }
        phi.normalize();
        return phi;
    }

    XiPolyT to_xi_family() const {
        XiPolyT phi;
        for (const auto& [k, c] : terms) {
            int i = std::get<0>(k);
            if (static_cast<int>(phi.a.size()) <= i) phi.a.resize(i + 1);
            phi.a[i] = phi.a[i] + TSeries::monomial(Rat(std::get<1>(k)),
                                                    TPoly::monomial(Coeff(c), std::get<2>(k)));
        }
        phi.normalize();
        return phi;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        // render highest x-degree first, then y, then t
        std::vector<std::pair<Key, GaussRat>> ts(terms.begin(), terms.end());
        std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
            if (std::get<0>(a.first) != std::get<0>(b.first))
                return std::get<0>(a.first) > std::get<0>(b.first);
            if (std::get<1>(a.first) != std::get<1>(b.first))
                return std::get<1>(a.first) < std::get<1>(b.first);
            return std::get<2>(a.first) < std::get<2>(b.first);
        });
        std::string s;
        for (const auto& [k, c] : ts) {
            std::string mono;
            auto var = [&](const char* v, int e) {
                if (e == 0) return std::string();
                std::string r = v;
                if (e > 1) r += "^" + std::to_string(e);
                return r;
            };
            std::string vars;
            for (auto [v, e] : {std::pair<const char*, int>{"x", std::get<0>(k)},
                                {"y", std::get<1>(k)},
                                {"t", std::get<2>(k)}}) {
                std::string p = var(v, e);
                if (!p.empty()) {
                    if (!vars.empty()) vars += "*";
                    vars += p;
                }
            }
            std::string cs = c.str();
            bool neg = cs.size() > 1 && cs[0] == '-' &&
                       cs.find_first_of("+-", 1) == std::string::npos;
            std::string joined;
            if (vars.empty())
                joined = cs;
            else if (cs == "1")
                joined = vars;
            else if (cs == "-1")
                joined = "-" + vars;
            else {
                bool composite = cs.find_first_of("+-", 1) != std::string::npos;
                joined = (composite ? "(" + cs + ")" : cs) + "*" + vars;
            }
            if (s.empty()) {
                s = joined;
            } else if (neg || (joined.size() > 1 && joined[0] == '-')) {
                s += " - " + (joined[0] == '-' ? joined.substr(1) : joined);
            } else {
                s += " + " + joined;
            }
        }
        return s;
    }
};

// Make f mini-regular in x by the smallest shear y -> y + c x, c a
// nonnegative integer. Returns the (possibly unchanged) polynomial and c.
struct MiniRegularization {
    PolyXYT f;
    long shear = 0;
    int order = 0;  // the mini-regularity order m
};

inline MiniRegularization mini_regularize(const PolyXYT& f) {
    if (f.zero()) throw Error("mini-regularize: zero polynomial");
    int m = f.order_xy();
    if (m < 0) throw Error("mini-regularize: no t-independent part");
    // H_m(1, c) = sum_{i+j=m} a_{ij} c^j over the t = 0 slice
    auto hm_at = [&](long c) {
        GaussRat v;
        for (const auto& [k, a] : f.terms) {
            if (std::get<2>(k) != 0) continue;
            if (std::get<0>(k) + std::get<1>(k) != m) continue;
            GaussRat term = a;
            for (int e = 0; e < std::get<1>(k); ++e) term *= GaussRat(Rat(c));
            v += term;
        }
        return v;
    };
    for (long c = 0;; ++c) {
        if (!hm_at(c).is_zero()) {
            MiniRegularization out;
            out.f = f.shear_y(c);
            out.shear = c;
            out.order = m;
            return out;
        }
        if (c > m + 1) throw InternalError("mini-regularize: no shear found");
    }
}

}  // namespace puiseux

#endif
