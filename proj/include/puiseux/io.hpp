#ifndef PUISEUX_IO_HPP
#define PUISEUX_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "puiseux/deformation.hpp"
#include "puiseux/polyxy.hpp"
#include "puiseux/tree.hpp"
#include "puiseux/truncation.hpp"

namespace puiseux {

using Json = nlohmann::ordered_json;

// --- polynomial parser --------------------------------------------------
//
// terms of integers/rationals (p/q), the imaginary unit i, variables
// x, y, t, operators + - * ^ ( ), exponents nonnegative integers.

namespace detail {

struct Token {
    enum Kind { kNum, kImag, kVar, kPlus, kMinus, kStar, kCaret, kLParen, kRParen, kEnd };
    Kind kind;
    Rat num;
    char var = 0;
    int line = 1, col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= s_.size()) {
            t.kind = Token::kEnd;
            return t;
        }
        char c = s_[pos_];
        if (c >= '0' && c <= '9') {
            std::string digits;
            while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
                digits += s_[pos_];
                advance();
            }
            Int num(digits);
            Int den(1);
            if (pos_ < s_.size() && s_[pos_] == '/') {
                size_t save = pos_;
                int sl = line_, sc = col_;
                advance();
                if (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
                    std::string d2;
                    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
                        d2 += s_[pos_];
                        advance();
                    }
                    den = Int(d2);
                    if (den == 0) throw ParseError("zero denominator", sl, sc);
                } else {
                    pos_ = save;  // plain '/' is not an operator
                    line_ = sl;
                    col_ = sc;
                }
            }
            t.kind = Token::kNum;
            t.num = Rat(num, den);
            t.num.canonicalize();
            return t;
        }
        advance();
        switch (c) {
            case 'i': t.kind = Token::kImag; return t;
            case 'x':
            case 'y':
            case 't':
                t.kind = Token::kVar;
                t.var = c;
                return t;
            case '+': t.kind = Token::kPlus; return t;
            case '-': t.kind = Token::kMinus; return t;
            case '*': t.kind = Token::kStar; return t;
            case '^': t.kind = Token::kCaret; return t;
            case '(': t.kind = Token::kLParen; return t;
            case ')': t.kind = Token::kRParen; return t;
            default:
                if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))
                    throw ParseError(std::string("unknown variable '") + c + "'", t.line, t.col);
                throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
        }
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() &&
               (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
            advance();
        }
    }
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) { shift(); }

    PolyXYT parse() {
        PolyXYT p = expr();
        expect(Token::kEnd, "end of input");
        return p;
    }

  private:
    void shift() { cur_ = lex_.next(); }
    void expect(Token::Kind k, const char* what) {
        if (cur_.kind != k)
            throw ParseError(std::string("expected ") + what, cur_.line, cur_.col);
    }

    PolyXYT expr() {
        PolyXYT p = term();
        while (cur_.kind == Token::kPlus || cur_.kind == Token::kMinus) {
            bool minus = cur_.kind == Token::kMinus;
            shift();
            PolyXYT q = term();
            p = minus ? p - q : p + q;
        }
        return p;
    }

    PolyXYT term() {
        PolyXYT p = unary();
        while (cur_.kind == Token::kStar) {
            shift();
            p = p * unary();
        }
        return p;
    }

    PolyXYT unary() {
        if (cur_.kind == Token::kMinus) {
            shift();
            return -unary();
        }
        return primary();
    }

    PolyXYT primary() {
        PolyXYT base;
        switch (cur_.kind) {
            case Token::kNum:
                base = PolyXYT::mono(0, 0, 0, GaussRat(cur_.num));
                shift();
                break;
            case Token::kImag:
                base = PolyXYT::mono(0, 0, 0, GaussRat::i());
                shift();
                break;
            case Token::kVar: {
                int i = cur_.var == 'x', j = cur_.var == 'y', k = cur_.var == 't';
                base = PolyXYT::mono(i, j, k, GaussRat(1));
                shift();
                break;
            }
            case Token::kLParen:
                shift();
                base = expr();
                expect(Token::kRParen, "')'");
                shift();
                break;
            default:
                throw ParseError("expected a number, variable or '('", cur_.line, cur_.col);
        }
        if (cur_.kind == Token::kCaret) {
            shift();
            if (cur_.kind == Token::kMinus)
                throw ParseError("negative exponent", cur_.line, cur_.col);
            expect(Token::kNum, "a nonnegative integer exponent");
            if (rat_den(cur_.num) != 1)
                throw ParseError("exponent must be an integer", cur_.line, cur_.col);
            unsigned e = static_cast<unsigned>(rat_num(cur_.num).get_ui());
            shift();
            base = base.pow(e);
        }
        return base;
    }

    Lexer lex_;
    Token cur_;
};

}  // namespace detail

inline PolyXYT parse_poly(const std::string& text) { return detail::Parser(text).parse(); }

// --- JSON rendering -------------------------------------------------------

inline Json coeff_json(const Coeff& c) {
    if (c.is_exact())
        return Json{{"type", "exact"}, {"value", c.exact().str()}};
    return Json{{"type", "ball"},
                {"re", detail::mpfr_str(c.ball().re())},
                {"im", detail::mpfr_str(c.ball().im())},
                {"rad", detail::mpfr_str(c.ball().rad())}};
}

// Schema: {denom, terms: [[num, coeff]...], trunc}
inline Json series_json(const PuiseuxSeries& s) {
    Int n = s.multiplicity();
    Json terms = Json::array();
    for (const auto& t : s.terms()) {
        Int num = rat_num(t.exp) * (n / rat_den(t.exp));
        terms.push_back(Json::array({num.get_str(), coeff_json(t.coeff)}));
    }
    Json j;
    j["denom"] = n.get_str();
    j["terms"] = std::move(terms);
    j["trunc"] = s.trunc().is_finite() ? Json(s.trunc().value().get_str()) : Json(nullptr);
    j["text"] = series_str(s);
    return j;
}

inline Json edge_json(const Edge<Coeff>& e) {
    Json dots = Json::array();
    for (const auto& d : e.dots)
        dots.push_back(Json{{"k", d.k}, {"q", d.q.get_str()}, {"coeff", coeff_json(d.coeff)}});
    Json assoc = Json::array();
    for (int i = 0; i <= e.assoc.degree(); ++i) assoc.push_back(coeff_json(e.assoc.at(i)));
    return Json{{"kind", edge_kind_name(e.kind)},
                {"coslope", e.coslope.str()},
                {"left", Json::array({e.left.first, e.left.second.get_str()})},
                {"right", Json::array({e.right.first, e.right.second.get_str()})},
                {"lojasiewicz", e.lojasiewicz().str()},
                {"dots", std::move(dots)},
                {"assoc_poly", std::move(assoc)}};
}

inline Json polygon_json(const Polygon<Coeff>& P) {
    Json edges = Json::array();
    for (const auto& e : P.edges) edges.push_back(edge_json(e));
    return Json{{"edges", std::move(edges)},
                {"last_vertex",
                 Json::array({P.last_vertex.first, P.last_vertex.second.get_str()})},
                {"root_multiplicity", P.root_multiplicity()}};
}

inline Json branches_json(const std::vector<RootBranch>& branches,
                          const std::vector<int>& conj_class = {}) {
    Json arr = Json::array();
    for (size_t i = 0; i < branches.size(); ++i) {
        Json b{{"series", series_json(branches[i].series)},
               {"multiplicity", branches[i].multiplicity},
               {"separation_depth", branches[i].separation_depth.get_str()}};
        if (!conj_class.empty()) b["conjugacy_class"] = conj_class[i];
        arr.push_back(std::move(b));
    }
    return arr;
}

inline Json value_json(const ValuePair& v) {
    if (v.zero) return Json{{"zero", true}};
    return Json{{"zero", false}, {"u", coeff_json(v.u)}, {"h", v.h.str()}};
}

inline Json tree_json(const KuoLuTree& tree) {
    Json bars = Json::array();
    for (const auto& b : tree.bars) {
        Json marks = Json::array();
        for (const auto& m : b.marks)
            marks.push_back(Json{{"coordinate", coeff_json(m.coordinate)},
                                 {"multiplicity", m.multiplicity},
                                 {"value", value_json(m.value)}});
        Json assoc = Json::array();
        for (int i = 0; i <= b.assoc.degree(); ++i) assoc.push_back(coeff_json(b.assoc.at(i)));
        bars.push_back(Json{{"height", b.height.get_str()},
                            {"stem", series_json(b.stem)},
                            {"assoc_poly", std::move(assoc)},
                            {"lojasiewicz", b.loja.str()},
                            {"supported_roots", b.supported},
                            {"parent", b.parent},
                            {"critical_marks", std::move(marks)}});
    }
    Json crit = Json::array();
    for (const auto& c : tree.critical)
        crit.push_back(Json{{"coordinate", series_json(c.coordinate)},
                            {"height", c.height.str()},
                            {"multiplicity", c.multiplicity},
                            {"bar", c.bar},
                            {"lojasiewicz", c.loja.str()},
                            {"value", value_json(c.value)}});
    return Json{{"order", tree.order},
                {"branches", branches_json(tree.branches)},
                {"bars", std::move(bars)},
                {"critical_points", std::move(crit)}};
}

inline Json witness_json(const Witness& w) {
    Json j{{"condition", w.condition}, {"detail", w.detail}};
    if (w.dot) j["dot"] = Json::array({w.dot->first, w.dot->second.get_str()});
    return j;
}

inline Json stability_json(const StabilityReport& rep) {
    Json fams = Json::array();
    auto tri = [](Tri t) {
        return t == Tri::True ? "true" : t == Tri::False ? "false" : "unknown";
    };
    for (const auto& f : rep.families) {
        Json pts = Json::array();
        for (const auto& p : f.points)
            pts.push_back(Json{{"point", p.point},
                               {"multiplicity", p.multiplicity},
                               {"stable", tri(p.stable)},
                               {"carrying_factor", p.carrying_factor}});
        Json ws = Json::array();
        for (const auto& w : f.witnesses) ws.push_back(witness_json(w));
        fams.push_back(Json{{"family", f.family},
                            {"verdict", verdict_name(f.verdict)},
                            {"cond1", tri(f.cond1)},
                            {"cond2", tri(f.cond2)},
                            {"cond3", tri(f.cond3)},
                            {"critical_points", std::move(pts)},
                            {"witnesses", std::move(ws)}});
    }
    Json ws = Json::array();
    for (const auto& w : rep.witnesses) ws.push_back(witness_json(w));
    return Json{{"verdict", verdict_name(rep.verdict)},
                {"morse_part_inconclusive", rep.morse_part_inconclusive},
                {"families", std::move(fams)},
                {"witnesses", std::move(ws)},
                {"notes", rep.notes}};
}

inline Json truncation_json(const TruncationResult& res) {
    Json evs = Json::array();
    for (const auto& e : res.e_values) evs.push_back(e.get_str());
    Json rem = Json::array();
    for (const auto& r : res.remainder_orders) rem.push_back(r.str());
    return Json{{"fhat", res.fhat.str()},
                {"e_values", std::move(evs)},
                {"truncated_roots", branches_json(res.truncated_roots)},
                {"remainder_orders", std::move(rem)},
                {"snap_log", res.snap_log},
                {"depth_capped", res.depth_capped}};
}

// --- conjugacy grouping ----------------------------------------------------

// Assign each branch a conjugacy-class id so curve-level listings show each
// geometric point once.
inline std::vector<int> conjugacy_classes(const std::vector<RootBranch>& branches,
                                          mpfr_prec_t prec = kDefaultPrec) {
    std::vector<int> cls(branches.size(), -1);
    int next = 0;
    for (size_t i = 0; i < branches.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = next;
        for (const auto& cj : conjugates(branches[i].series, prec)) {
            for (size_t j = 0; j < branches.size(); ++j) {
                if (cls[j] >= 0) continue;
                const auto& other = branches[j].series;
                if (other.terms().size() != cj.terms().size()) continue;
                bool match = true;
                for (size_t k = 0; k < cj.terms().size(); ++k) {
                    if (cj.terms()[k].exp != other.terms()[k].exp ||
                        !possibly_equal(cj.terms()[k].coeff, other.terms()[k].coeff)) {
                        match = false;
                        break;
                    }
                }
                if (match) cls[j] = next;
            }
        }
        ++next;
    }
    return cls;
}

}  // namespace puiseux

#endif
