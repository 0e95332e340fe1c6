// Command-line front end: parse a plane curve or deformation, run the
// requested analysis, print text or JSON, optionally emit SVG figures.
//
// Exit codes: 0 success, 1 usage/parse error, 2 computation error,
// 3 inconclusive.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "puiseux/io.hpp"
#include "puiseux/svg.hpp"

using namespace puiseux;

namespace {

struct Common {
    std::string input;
    std::string file;
    std::string format = "text";
    std::string depth;
    unsigned precision = 0;
    std::string svg_path;
    int jobs = 1;
    bool no_regularize = false;
};

void add_common(CLI::App* cmd, Common& c, int positional_polys = 1) {
    if (positional_polys >= 1)
        cmd->add_option("poly", c.input, "input polynomial (or use --file)");
    cmd->add_option("--file", c.file, "read the input polynomial from a file");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--depth", c.depth, "expansion depth as a rational p/q");
    cmd->add_option("--precision", c.precision, "working precision in bits");
    cmd->add_option("--svg", c.svg_path, "write an SVG figure to this path");
    cmd->add_option("--jobs", c.jobs, "number of parallel jobs");
    cmd->add_flag("--no-regularize", c.no_regularize,
                  "fail instead of applying an automatic mini-regularizing shear");
}

std::string read_input(const Common& c) {
    if (!c.file.empty()) {
        std::ifstream in(c.file);
        if (!in) throw Error("cannot open file: " + c.file);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (!c.input.empty()) return c.input;
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

EngineOptions engine_options(const Common& c) {
    EngineOptions o;
    if (c.precision > 0) {
        o.prec = static_cast<mpfr_prec_t>(c.precision);
        o.max_prec = std::max<mpfr_prec_t>(o.prec, kMaxPrec);
    } else if (const char* env = std::getenv("PUISEUX_PRECISION")) {
        long p = std::atol(env);
        if (p > 0) o.prec = static_cast<mpfr_prec_t>(p);
    }
    if (!c.depth.empty()) {
        std::string d = c.depth;
        Rat r(d);
        r.canonicalize();
        o.depth = ExtRat(r);
    }
    return o;
}

struct Prepared {
    PolyXYT f;
    long shear = 0;
    int order = 0;
};

Prepared prepare_curve(const Common& c, const PolyXYT& raw, bool allow_t) {
    if (!allow_t && raw.uses_t())
        throw Error("this command expects a plane curve f(x,y) without t");
    MiniRegularization mr = mini_regularize(raw);
    if (mr.shear != 0 && c.no_regularize)
        throw Error("input is not mini-regular in x (rerun without --no-regularize)");
    Prepared p;
    p.f = mr.f;
    p.shear = mr.shear;
    p.order = mr.order;
    return p;
}

void write_svg(const Common& c, const std::string& svg) {
    std::ofstream out(c.svg_path);
    if (!out) throw Error("cannot write SVG file: " + c.svg_path);
    out << svg;
}

void report_shear(const Prepared& p, Json& j, std::ostream& text, bool json_mode) {
    if (p.shear == 0) return;
    if (json_mode)
        j["regularization"] = "y -> y + " + std::to_string(p.shear) + "*x";
    else
        text << "applied mini-regularizing shear y -> y + " << p.shear << "*x\n";
}

std::string cpoly_str(const CPoly& p, const char* var = "z") {
    if (p.zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        if (is_zero(p.at(i))) continue;
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
        else if (term[0] == '-' && term.find_first_of("+-", 1) == std::string::npos)
            s += " - " + term.substr(1);
        else
            s += " + " + term;
    }
    return s;
}

int run_expand(const Common& c) {
    PolyXYT raw = parse_poly(read_input(c));
    Prepared p = prepare_curve(c, raw, false);
    EngineOptions o = engine_options(c);
    auto branches = expand_roots(p.f.to_xi(), o);
    auto classes = conjugacy_classes(branches, o.prec);
    Json j;
    bool json_mode = c.format == "json";
    report_shear(p, j, std::cout, json_mode);
    if (json_mode) {
        j["branches"] = branches_json(branches, classes);
        std::cout << j.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < branches.size(); ++i) {
            std::cout << "zeta_" << i + 1 << " = " << series_str(branches[i].series)
                      << "   [mult " << branches[i].multiplicity << ", class "
                      << classes[i] + 1 << ", separation "
                      << branches[i].separation_depth.get_str() << "]\n";
        }
    }
    return 0;
}

int run_polygon(const Common& c) {
    PolyXYT raw = parse_poly(read_input(c));
    Prepared p = prepare_curve(c, raw, false);
    EngineOptions o = engine_options(c);
    auto P = build_polygon(p.f.to_xi(), -static_cast<long>(o.prec) / 2);
    bool json_mode = c.format == "json";
    Json j;
    report_shear(p, j, std::cout, json_mode);
    if (json_mode) {
        j["polygon"] = polygon_json(P);
        std::cout << j.dump(2) << "\n";
    } else {
        int i = 0;
        for (const auto& e : P.edges) {
            std::cout << "E" << i++ << " [" << edge_kind_name(e.kind) << "]";
            if (e.kind != EdgeKind::Vertical) {
                std::cout << " co-slope " << e.coslope.str() << ", L = "
                          << e.lojasiewicz().str() << ", vertices (" << e.left.first << ","
                          << e.left.second.get_str() << ")-(" << e.right.first << ","
                          << e.right.second.get_str() << ")";
                std::cout << ", P_E(z) = " << cpoly_str(e.assoc);
            } else {
                std::cout << " at (" << e.left.first << "," << e.left.second.get_str() << ")";
            }
            std::cout << "\n";
        }
    }
    if (!c.svg_path.empty()) write_svg(c, polygon_svg(P));
    return 0;
}

int run_tree(const Common& c) {
    PolyXYT raw = parse_poly(read_input(c));
    Prepared p = prepare_curve(c, raw, false);
    EngineOptions o = engine_options(c);
    KuoLuTree tree = analyze(p.f.to_xi(), o);
    bool json_mode = c.format == "json";
    Json j;
    report_shear(p, j, std::cout, json_mode);
    if (json_mode) {
        j["tree"] = tree_json(tree);
        std::cout << j.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < tree.branches.size(); ++i)
            std::cout << "zeta_" << i + 1 << " = " << series_str(tree.branches[i].series)
                      << "   [mult " << tree.branches[i].multiplicity << "]\n";
        for (size_t b = 0; b < tree.bars.size(); ++b) {
            const Bar& bar = tree.bars[b];
            std::cout << "bar " << b + 1 << ": height " << bar.height.get_str() << ", stem "
                      << series_str(bar.stem) << ", P_B(z) = " << cpoly_str(bar.assoc)
                      << ", L = " << bar.loja.str() << ", roots {";
            for (size_t k = 0; k < bar.supported.size(); ++k)
                std::cout << (k ? "," : "") << bar.supported[k] + 1;
            std::cout << "}\n";
        }
        for (const auto& cp : tree.critical)
            std::cout << "critical point: " << series_str(cp.coordinate) << "   [m_crit "
                      << cp.multiplicity << ", h " << cp.height.str() << ", L "
                      << cp.loja.str() << ", val " << cp.value.str() << "]\n";
    }
    if (!c.svg_path.empty()) write_svg(c, tree_svg(tree));
    return 0;
}

int run_truncate(const Common& c) {
    PolyXYT raw = parse_poly(read_input(c));
    Prepared p = prepare_curve(c, raw, false);
    EngineOptions o = engine_options(c);
    auto res = root_truncation(p.f, o);
    bool json_mode = c.format == "json";
    Json j;
    report_shear(p, j, std::cout, json_mode);
    if (json_mode) {
        j["truncation"] = truncation_json(res);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "fhat_root = " << res.fhat.str() << "\n";
        for (size_t i = 0; i < res.truncated_roots.size(); ++i) {
            std::cout << "zhat_" << i + 1 << " = "
                      << series_str(res.truncated_roots[i].series) << "   [mult "
                      << res.truncated_roots[i].multiplicity;
            if (i < res.e_values.size())
                std::cout << ", e = " << res.e_values[i].get_str();
            std::cout << ", O(R) = " << res.remainder_orders[i].str() << "]\n";
        }
        for (const auto& s : res.snap_log) std::cout << "snap: " << s << "\n";
        if (res.depth_capped) std::cout << "note: single-root case emitted to stored depth\n";
    }
    return 0;
}

int run_stability(const Common& c) {
    PolyXYT raw = parse_poly(read_input(c));
    MiniRegularization mr = mini_regularize(raw);
    if (mr.shear != 0 && c.no_regularize)
        throw Error("input is not mini-regular in x (rerun without --no-regularize)");
    EngineOptions o = engine_options(c);
    o.jobs = c.jobs;
    StabilityReport rep = check_deformation(mr.f, o);
    bool json_mode = c.format == "json";
    if (json_mode) {
        Json j = stability_json(rep);
        if (mr.shear != 0)
            j["regularization"] = "y -> y + " + std::to_string(mr.shear) + "*x";
        std::cout << j.dump(2) << "\n";
    } else {
        if (mr.shear != 0)
            std::cout << "applied mini-regularizing shear y -> y + " << mr.shear << "*x\n";
        std::cout << "verdict: " << verdict_name(rep.verdict) << "\n";
        for (const auto& f : rep.families) {
            std::cout << "family " << f.family << " -> " << verdict_name(f.verdict) << "\n";
            for (const auto& w : f.witnesses)
                std::cout << "  witness (condition " << w.condition << "): " << w.detail
                          << "\n";
        }
        for (const auto& w : rep.witnesses)
            std::cout << "witness (condition " << w.condition << "): " << w.detail << "\n";
        for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
        if (rep.morse_part_inconclusive)
            std::cout << "note: almost Morse stable; the Morse refinement is undecided\n";
    }
    return rep.verdict == Verdict::Inconclusive ? 3 : 0;
}

int run_contact(const Common& c, const std::string& second) {
    PolyXYT f = parse_poly(read_input(c));
    PolyXYT g = parse_poly(second);
    Prepared pf = prepare_curve(c, f, false);
    Prepared pg = prepare_curve(c, g, false);
    EngineOptions o = engine_options(c);
    auto bf = expand_roots(pf.f.to_xi(), o);
    auto bg = expand_roots(pg.f.to_xi(), o);
    auto cf = conjugacy_classes(bf, o.prec);
    auto cg = conjugacy_classes(bg, o.prec);
    bool json_mode = c.format == "json";
    ExtRat best(Rat(0));
    Json rows = Json::array();
    for (size_t i = 0; i < bf.size(); ++i) {
        for (size_t j = 0; j < bg.size(); ++j) {
            ExtRat cij = contact_order_curve(bf[i].series, bg[j].series, o.prec);
            if (best < cij) best = cij;
            rows.push_back(Json{{"f_branch", i},
                                {"g_branch", j},
                                {"f_class", cf[i]},
                                {"g_class", cg[j]},
                                {"contact", cij.str()}});
            if (!json_mode)
                std::cout << "C_ord(zeta_f" << i + 1 << ", zeta_g" << j + 1
                          << ") = " << cij.str() << "\n";
        }
    }
    if (json_mode) {
        Json j{{"pairs", rows}, {"max_contact", best.str()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "max contact order: " << best.str() << "\n";
    }
    return 0;
}

int run_pairs(const Common& c) {
    PolyXYT raw = parse_poly(read_input(c));
    Prepared p = prepare_curve(c, raw, false);
    EngineOptions o = engine_options(c);
    auto branches = expand_roots(p.f.to_xi(), o);
    auto classes = conjugacy_classes(branches, o.prec);
    bool json_mode = c.format == "json";
    Json arr = Json::array();
    int done = -1;
    for (size_t i = 0; i < branches.size(); ++i) {
        if (classes[i] <= done) continue;
        done = classes[i];
        auto pr = puiseux_pairs(branches[i].series);
        if (json_mode) {
            Json pj = Json::array();
            for (const auto& e : pr) pj.push_back(e.get_str());
            arr.push_back(Json{{"class", classes[i]},
                               {"representative", series_json(branches[i].series)},
                               {"puiseux_multiplicity",
                                branches[i].series.multiplicity().get_str()},
                               {"pairs", std::move(pj)}});
        } else {
            std::cout << "class " << classes[i] + 1 << ": "
                      << series_str(branches[i].series) << "\n  N = "
                      << branches[i].series.multiplicity().get_str() << ", pairs = {";
            for (size_t k = 0; k < pr.size(); ++k)
                std::cout << (k ? ", " : "") << pr[k].get_str();
            std::cout << "}\n";
        }
    }
    if (json_mode) std::cout << Json{{"classes", arr}}.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Newton-Puiseux analysis of plane curve singularities"};
    app.require_subcommand(1);

    Common c_expand, c_polygon, c_tree, c_truncate, c_stab, c_contact, c_pairs;
    std::string contact_second;

    add_common(app.add_subcommand("expand", "Puiseux root expansion"), c_expand);
    add_common(app.add_subcommand("polygon", "Newton polygon at the origin"), c_polygon);
    add_common(app.add_subcommand("tree", "Kuo-Lu tree model with critical points"), c_tree);
    add_common(app.add_subcommand("truncate", "Puiseux root truncation"), c_truncate);
    add_common(app.add_subcommand("stability", "Morse stability of a deformation F(x,y,t)"),
               c_stab);
    auto* contact_cmd =
        app.add_subcommand("contact", "contact orders between the branches of two curves");
    add_common(contact_cmd, c_contact);
    contact_cmd->add_option("second", contact_second, "second polynomial")->required();
    add_common(app.add_subcommand("pairs", "Puiseux characteristic pairs per branch class"),
               c_pairs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("expand")) return run_expand(c_expand);
        if (app.got_subcommand("polygon")) return run_polygon(c_polygon);
        if (app.got_subcommand("tree")) return run_tree(c_tree);
        if (app.got_subcommand("truncate")) return run_truncate(c_truncate);
        if (app.got_subcommand("stability")) return run_stability(c_stab);
        if (app.got_subcommand("contact")) return run_contact(c_contact, contact_second);
        if (app.got_subcommand("pairs")) return run_pairs(c_pairs);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const UnresolvedClusterError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
