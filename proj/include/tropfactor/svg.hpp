#pragma once

// Static SVG figure of a decomposition: the input body with its
// triangulation and lattice dots, and below it a row of signed atoms.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "tropfactor/pipeline.hpp"

namespace tropfactor {

namespace detail {

constexpr Int kUnitPx = 32;
constexpr Int kMarginPx = 16;

struct SvgFrame {
    Int xmin, ymax;  // lattice coordinates of the top-left corner
    Int ox, oy;      // pixel offset of that corner
    Int px(Point p) const { return ox + (p.x - xmin) * kUnitPx; }
    Int py(Point p) const { return oy + (ymax - p.y) * kUnitPx; }
};

inline std::string svg_points(const SvgFrame& f, const Body& b) {
    std::ostringstream os;
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << f.px(b[i]) << ',' << f.py(b[i]);
    return os.str();
}

inline void svg_body(std::ostringstream& os, const SvgFrame& f, const Body& b, const char* cls) {
    if (b.is_polygon()) {
        os << "<polygon class=\"" << cls << "\" points=\"" << svg_points(f, b) << "\"/>\n";
    } else if (b.is_segment()) {
        os << "<line class=\"" << cls << "\" x1=\"" << f.px(b[0]) << "\" y1=\"" << f.py(b[0]) << "\" x2=\"" << f.px(b[1])
           << "\" y2=\"" << f.py(b[1]) << "\"/>\n";
    } else {
        os << "<circle class=\"" << cls << "\" cx=\"" << f.px(b[0]) << "\" cy=\"" << f.py(b[0]) << "\" r=\"5\"/>\n";
    }
}

inline void svg_dots(std::ostringstream& os, const SvgFrame& f, Box box) {
    for (Int y = box.ymax; y >= box.ymin; --y) {
        for (Int x = box.xmin; x <= box.xmax; ++x) {
            os << "<circle class=\"lattice\" cx=\"" << f.px({x, y}) << "\" cy=\"" << f.py({x, y}) << "\" r=\"2\"/>\n";
        }
    }
}

inline std::string signed_label(Int k) { return (k > 0 ? "+" : "") + std::to_string(k); }

}  // namespace detail

inline std::string render_svg(const DecompositionReport& report) {
    using namespace detail;
    struct AtomEntry {
        Body body;
        Int k;
        std::string name;
    };
    std::vector<AtomEntry> atoms;
    const NormalForm& nf = report.normal_form;
    if (nf.kx != 0) atoms.push_back({atom_body(UnitX{}), nf.kx, "Ix"});
    if (nf.ky != 0) atoms.push_back({atom_body(UnitY{}), nf.ky, "Iy"});
    for (const auto& [tri, k] : nf.triangles) {
        std::ostringstream name;
        name << tri;
        atoms.push_back({tri.body(), k, name.str()});
    }

    Box box = bounding_box(report.input);
    const Int body_w = (box.xmax - box.xmin) * kUnitPx;
    const Int body_h = (box.ymax - box.ymin) * kUnitPx;
    const Int row_top = kMarginPx + body_h + 2 * kMarginPx + 16;

    Int row_w = 0, row_h = 0;
    for (const auto& a : atoms) {
        Box ab = bounding_box(a.body);
        row_w += (ab.xmax - ab.xmin) * kUnitPx + 3 * kMarginPx;
        row_h = std::max(row_h, (ab.ymax - ab.ymin) * kUnitPx);
    }
    const Int width = std::max(body_w, row_w) + 2 * kMarginPx;
    const Int height = row_top + row_h + 2 * kMarginPx + 16;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height << "\" width=\""
       << width << "\" height=\"" << height << "\">\n";
    os << "<style>.body{fill:#d9d9d9;stroke:#000;stroke-width:2}"
          ".cell{fill:none;stroke:#555;stroke-width:1}"
          ".atom-shape{fill:#d9d9d9;stroke:#000;stroke-width:2}"
          ".lattice{fill:#000}"
          "text{font-family:sans-serif;font-size:14px}</style>\n";

    SvgFrame top{box.xmin, box.ymax, kMarginPx, kMarginPx};
    os << "<g class=\"input\">\n";
    svg_body(os, top, report.input, "body");
    if (report.partition) {
        for (const Body& cell : report.partition->cell_bodies()) svg_body(os, top, cell, "cell");
    }
    svg_dots(os, top, box);
    os << "</g>\n";

    os << "<text class=\"translation\" x=\"" << kMarginPx << "\" y=\"" << row_top - 12 << "\">t=(" << nf.t.x << ','
       << nf.t.y << ")</text>\n";
    Int cursor = kMarginPx;
    for (const auto& a : atoms) {
        Box ab = bounding_box(a.body);
        SvgFrame f{ab.xmin, ab.ymax, cursor + 2 * kMarginPx, row_top + row_h - (ab.ymax - ab.ymin) * kUnitPx};
        os << "<g class=\"atom\" data-atom=\"" << a.name << "\" data-k=\"" << a.k << "\">\n";
        os << "<text class=\"coef\" x=\"" << cursor << "\" y=\"" << row_top + row_h / 2 + 5 << "\">"
           << signed_label(a.k) << "</text>\n";
        svg_body(os, f, a.body, "atom-shape");
        svg_dots(os, f, ab);
        os << "</g>\n";
        cursor += (ab.xmax - ab.xmin) * kUnitPx + 3 * kMarginPx;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace tropfactor
