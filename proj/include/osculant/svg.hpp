#pragma once

// Deterministic SVG figures: the curve as a fixed-resolution polyline with
// I/S glyphs at special points and an optional caption. All numbers are
// printed with fixed precision so identical inputs give identical bytes.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "osculant/curve.hpp"
#include "osculant/special_points.hpp"

namespace osc {

struct SvgOptions {
    int segments = 2048;
    int width = 640;
    int height = 640;
    double margin = 0.08;  // fraction of the data extent on each side
};

namespace detail {

inline std::string svgNum(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace detail

inline std::string renderSvg(const ClosedCurve& curve, const std::vector<SpecialPoint>& markers,
                             const std::string& caption = "", const SvgOptions& opt = {}) {
    const double period = curve.period();
    std::vector<Eigen::Vector2d> pts(opt.segments + 1);
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (int i = 0; i <= opt.segments; ++i) {
        pts[i] = curve.affinePoint(period * i / opt.segments);
        xlo = std::min(xlo, pts[i].x());
        xhi = std::max(xhi, pts[i].x());
        ylo = std::min(ylo, pts[i].y());
        yhi = std::max(yhi, pts[i].y());
    }
    const double spanX = std::max(xhi - xlo, 1e-12), spanY = std::max(yhi - ylo, 1e-12);
    const double span = std::max(spanX, spanY) * (1 + 2 * opt.margin);
    const double cx = 0.5 * (xlo + xhi), cy = 0.5 * (ylo + yhi);
    const double scale = std::min(opt.width, opt.height) / span;
    auto mapX = [&](double x) { return opt.width * 0.5 + (x - cx) * scale; };
    auto mapY = [&](double y) { return opt.height * 0.5 - (y - cy) * scale; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
           "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
    out += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= opt.segments; ++i) {
        if (i) out += " ";
        out += detail::svgNum(mapX(pts[i].x())) + "," + detail::svgNum(mapY(pts[i].y()));
    }
    out += "\"/>\n";

    for (const auto& m : markers) {
        Eigen::Vector2d p = curve.affinePoint(m.t);
        const bool infl = m.kind == PointKind::Inflection;
        const char* color = infl ? "#c02020" : "#2040c0";
        const char* cls = infl ? "glyph-I" : "glyph-S";
        const char* letter = infl ? "I" : "S";
        std::string x = detail::svgNum(mapX(p.x())), y = detail::svgNum(mapY(p.y()));
        out += "  <circle class=\"" + std::string(cls) + "\" cx=\"" + x + "\" cy=\"" + y +
               "\" r=\"4\" fill=\"" + color + "\"/>\n";
        out += "  <text x=\"" + detail::svgNum(mapX(p.x()) + 6) + "\" y=\"" +
               detail::svgNum(mapY(p.y()) - 6) + "\" font-size=\"14\" fill=\"" + color + "\">" +
               letter + "</text>\n";
    }

    if (!caption.empty())
        out += "  <text x=\"8\" y=\"" + std::to_string(opt.height - 10) +
               "\" font-size=\"13\" fill=\"#404040\">" + caption + "</text>\n";
    out += "</svg>\n";
    return out;
}

inline void writeSvg(const std::string& path, const std::string& svg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write SVG file '" + path + "'");
    out << svg;
}

}  // namespace osc
