#ifndef PUISEUX_SVG_HPP
#define PUISEUX_SVG_HPP

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "puiseux/newton_polygon.hpp"
#include "puiseux/tree.hpp"

namespace puiseux {

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline void svg_line(std::string& s, double x1, double y1, double x2, double y2,
                     const char* style) {
    s += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
         "\" y2=\"" + fmt(y2) + "\" " + style + "/>\n";
}

inline void svg_circle(std::string& s, double x, double y, double r, const char* fill) {
    s += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r) +
         "\" fill=\"" + fill + "\"/>\n";
}

inline void svg_text(std::string& s, double x, double y, const std::string& text,
                     const char* style = "font-size=\"13\" font-family=\"serif\"") {
    s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" " + style + ">" + text +
         "</text>\n";
}

}  // namespace detail

// Newton polygon figure: grid, dots, edges with co-slope labels.
inline std::string polygon_svg(const Polygon<Coeff>& P) {
    double qmax = 0, kmax = 0;
    for (const auto& d : P.dots) {
        qmax = std::max(qmax, d.q.get_d());
        kmax = std::max(kmax, static_cast<double>(d.k));
    }
    qmax = std::max(qmax, 1.0);
    kmax = std::max(kmax, 1.0);
    const double cell = 60.0, margin = 50.0;
    double w = margin * 2 + kmax * cell + cell;
    double h = margin * 2 + qmax * cell + cell;
    auto X = [&](double k) { return margin + k * cell; };
    auto Y = [&](double q) { return h - margin - q * cell; };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    detail::fmt(w) + "\" height=\"" + detail::fmt(h) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int k = 0; k <= static_cast<int>(kmax) + 1; ++k)
        detail::svg_line(s, X(k), Y(0), X(k), Y(qmax + 1),
                         "stroke=\"#dddddd\" stroke-width=\"1\"");
    for (int q = 0; q <= static_cast<int>(qmax) + 1; ++q)
        detail::svg_line(s, X(0), Y(q), X(kmax + 1), Y(q),
                         "stroke=\"#dddddd\" stroke-width=\"1\"");
    detail::svg_line(s, X(0), Y(0), X(kmax + 1), Y(0), "stroke=\"black\" stroke-width=\"1\"");
    detail::svg_line(s, X(0), Y(0), X(0), Y(qmax + 1), "stroke=\"black\" stroke-width=\"1\"");

    int label = 0;
    for (const auto& e : P.edges) {
        double x1, y1, x2, y2;
        if (e.kind == EdgeKind::Horizontal) {
            x1 = X(e.left.first);
            y1 = Y(e.left.second.get_d());
            x2 = X(kmax + 0.8);
            y2 = y1;
        } else if (e.kind == EdgeKind::Vertical) {
            x1 = X(e.left.first);
            y1 = Y(e.left.second.get_d());
            x2 = x1;
            y2 = Y(qmax + 0.8);
        } else {
            x1 = X(e.left.first);
            y1 = Y(e.left.second.get_d());
            x2 = X(e.right.first);
            y2 = Y(e.right.second.get_d());
        }
        detail::svg_line(s, x1, y1, x2, y2, "stroke=\"black\" stroke-width=\"2.4\"");
        std::string name = "E" + std::to_string(label);
        if (e.kind == EdgeKind::Proper)
            name += " (tan = " + e.coslope.str() + ")";
        detail::svg_text(s, (x1 + x2) / 2 + 8, (y1 + y2) / 2 - 6, name);
        ++label;
    }
    for (const auto& d : P.dots)
        detail::svg_circle(s, X(d.k), Y(d.q.get_d()), 4.5, "black");
    s += "</svg>\n";
    return s;
}

// Tree-model figure: horizontal bars at their heights, stems, leaves and
// dashed critical marks.
inline std::string tree_svg(const KuoLuTree& tree) {
    size_t n = tree.branches.size();
    const double leaf_gap = 90.0, margin = 60.0;
    double hmax = 0;
    for (const auto& b : tree.bars) hmax = std::max(hmax, b.height.get_d());
    double hmin = hmax;
    for (const auto& b : tree.bars) hmin = std::min(hmin, b.height.get_d());
    if (tree.bars.empty()) {
        hmin = 0;
        hmax = 1;
    }
    double span = std::max(hmax - hmin, 0.5);
    const double level_scale = 140.0 / span * (tree.bars.empty() ? 0 : 1);
    double w = margin * 2 + leaf_gap * std::max<size_t>(n, 1);
    double h = margin * 2 + 140.0 + 120.0;
    auto leaf_x = [&](size_t i) { return margin + leaf_gap * (i + 0.5); };
    auto bar_y = [&](const Rat& height) {
        return margin + 40.0 + (hmax - height.get_d()) * level_scale + 100.0;
    };
    double leaf_top = margin + 20.0;

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    detail::fmt(w) + "\" height=\"" + detail::fmt(h) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // leaves: vertical ticks with labels
    for (size_t i = 0; i < n; ++i) {
        double x = leaf_x(i);
        double ytop = leaf_top;
        // find the highest bar supporting this leaf
        double ybot = h - margin;
        for (const auto& b : tree.bars)
            for (int idx : b.supported)
                if (idx == static_cast<int>(i)) ybot = std::min(ybot, bar_y(b.height));
        detail::svg_line(s, x, ybot, x, ytop + 16, "stroke=\"black\" stroke-width=\"1.6\"");
        std::string lbl = "z" + std::to_string(i + 1);
        if (tree.branches[i].multiplicity > 1)
            lbl += " (m=" + std::to_string(tree.branches[i].multiplicity) + ")";
        detail::svg_text(s, x - 10, ytop + 10, lbl);
    }
    // bars: horizontal segments over their supported leaves
    for (const auto& b : tree.bars) {
        double y = bar_y(b.height);
        int lo = *std::min_element(b.supported.begin(), b.supported.end());
        int hi = *std::max_element(b.supported.begin(), b.supported.end());
        detail::svg_line(s, leaf_x(lo), y, leaf_x(hi), y,
                         "stroke=\"black\" stroke-width=\"2.4\"");
        detail::svg_text(s, leaf_x(hi) + 8, y + 4, "h = " + b.height.get_str());
        // stem down to the parent bar
        if (b.parent >= 0) {
            const Bar& pb = tree.bars[b.parent];
            double mid = (leaf_x(lo) + leaf_x(hi)) / 2;
            detail::svg_line(s, mid, y, mid, bar_y(pb.height),
                             "stroke=\"black\" stroke-width=\"1.6\"");
        }
        // dashed critical marks
        int mark_i = 0;
        for (const auto& m : b.marks) {
            double frac = (mark_i + 1.0) / (b.marks.size() + 1.0);
            double x = leaf_x(lo) + (leaf_x(hi) - leaf_x(lo)) * frac;
            detail::svg_line(s, x, y, x, y - 26,
                             "stroke=\"black\" stroke-width=\"1.4\" stroke-dasharray=\"4,3\"");
            detail::svg_text(s, x - 8, y - 32,
                             "g (m=" + std::to_string(m.multiplicity) + ")");
            ++mark_i;
        }
    }
    s += "</svg>\n";
    return s;
}

}  // namespace puiseux

#endif
