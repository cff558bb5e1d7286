// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "csv.hpp"

namespace jambound {

struct Curve {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct AxesSpec {
    std::string x_label;
    std::string y_label;
    bool x_log10 = false;   // plot log10(x) on a linear scale
    bool cdf_steps = false; // right-continuous step interpolation
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

}  // namespace detail

// Self-contained SVG 1.1 line plot: fixed palette, legend from curve
// labels, ~6 ticks per axis. CDF curves render as step paths. No
// external assets, no scripts; viewable anywhere.
inline void render_svg(const std::vector<Curve>& curves, const std::string& path,
                       const AxesSpec& axes) {
    if (curves.empty()) throw std::invalid_argument("render_svg: no curves");
    for (const auto& c : curves) {
        if (c.points.size() < 2) {
            throw std::invalid_argument("render_svg: curve '" + c.label +
                                        "' has fewer than 2 points");
        }
    }
    const double width = 800, height = 500;
    const double ml = 70, mr = 160, mt = 30, mb = 55;

    const auto tx = [&](double x) { return axes.x_log10 ? std::log10(x) : x; };
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& c : curves) {
        for (const auto& [x, y] : c.points) {
            xmin = std::min(xmin, tx(x));
            xmax = std::max(xmax, tx(x));
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double ypad = 0.04 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const auto px = [&](double x) {
        return ml + (tx(x) - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    const auto py = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf", "#393b79", "#ad494a"};
    const std::size_t ncolor = sizeof(palette) / sizeof(palette[0]);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes box and ticks
    out << "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
    out << "<rect x=\"" << detail::svg_num(ml) << "\" y=\"" << detail::svg_num(mt)
        << "\" width=\"" << detail::svg_num(width - ml - mr) << "\" height=\""
        << detail::svg_num(height - mt - mb) << "\"/>\n";
    out << "</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    const int nticks = 6;
    for (int t = 0; t <= nticks; ++t) {
        const double fx = xmin + (xmax - xmin) * t / nticks;
        const double gx = ml + (width - ml - mr) * t / nticks;
        out << "<line x1=\"" << detail::svg_num(gx) << "\" y1=\""
            << detail::svg_num(height - mb) << "\" x2=\"" << detail::svg_num(gx)
            << "\" y2=\"" << detail::svg_num(height - mb + 5)
            << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << detail::svg_num(gx) << "\" y=\""
            << detail::svg_num(height - mb + 20) << "\" text-anchor=\"middle\">"
            << format_value(axes.x_log10 ? std::pow(10.0, fx) : fx) << "</text>\n";
        const double fy = ymin + (ymax - ymin) * t / nticks;
        const double gy = height - mb - (height - mt - mb) * t / nticks;
        out << "<line x1=\"" << detail::svg_num(ml - 5) << "\" y1=\""
            << detail::svg_num(gy) << "\" x2=\"" << detail::svg_num(ml) << "\" y2=\""
            << detail::svg_num(gy) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << detail::svg_num(ml - 9) << "\" y=\""
            << detail::svg_num(gy + 4) << "\" text-anchor=\"end\">" << format_value(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << detail::svg_num(ml + (width - ml - mr) / 2) << "\" y=\""
        << detail::svg_num(height - 12) << "\" text-anchor=\"middle\">" << axes.x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << detail::svg_num(mt + (height - mt - mb) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << detail::svg_num(mt + (height - mt - mb) / 2) << ")\">" << axes.y_label
        << "</text>\n";
    out << "</g>\n";

    // curves
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& c = curves[ci];
        out << "<polyline fill=\"none\" stroke=\"" << palette[ci % ncolor]
            << "\" stroke-width=\"1.6\" points=\"";
        double last_y = 0.0;
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            const auto& [x, y] = c.points[k];
            if (axes.cdf_steps && k > 0) {
                out << detail::svg_num(px(x)) << ',' << detail::svg_num(py(last_y)) << ' ';
            }
            out << detail::svg_num(px(x)) << ',' << detail::svg_num(py(y)) << ' ';
            last_y = y;
        }
        out << "\"/>\n";
    }

    // legend
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const double ly = mt + 14 + 18 * double(ci);
        out << "<line x1=\"" << detail::svg_num(width - mr + 10) << "\" y1=\""
            << detail::svg_num(ly - 4) << "\" x2=\"" << detail::svg_num(width - mr + 34)
            << "\" y2=\"" << detail::svg_num(ly - 4) << "\" stroke=\""
            << palette[ci % ncolor] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << detail::svg_num(width - mr + 40) << "\" y=\""
            << detail::svg_num(ly) << "\">" << curves[ci].label << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace jambound
