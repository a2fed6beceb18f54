#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <string>

#include "qcs/errors.hpp"
#include "qcs/io.hpp"

// Standalone SVG polyline plots. Deliberately minimal: a frame, axis tick
// labels and one data polyline are all the figures need.

namespace qcs {

struct PlotSpec {
    std::string title;
    std::string x_label = "t";
    std::string y_label;
    int width = 920;
    int height = 560;
};

inline void write_line_svg(std::span<const double> x, std::span<const double> y,
                           const PlotSpec& spec, std::ostream& out) {
    if (x.size() != y.size()) throw invalid_argument("SVG plot needs matching x/y lengths");
    if (x.size() < 2) throw invalid_argument("SVG plot needs at least two points");

    const auto [x_lo_it, x_hi_it] = std::minmax_element(x.begin(), x.end());
    const auto [y_lo_it, y_hi_it] = std::minmax_element(y.begin(), y.end());
    double x_lo = *x_lo_it, x_hi = *x_hi_it;
    double y_lo = *y_lo_it, y_hi = *y_hi_it;
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }

    const double margin_l = 72, margin_r = 20, margin_t = 36, margin_b = 48;
    const double plot_w = spec.width - margin_l - margin_r;
    const double plot_h = spec.height - margin_t - margin_b;
    const auto to_px_x = [&](double v) { return margin_l + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto to_px_y = [&](double v) {
        return margin_t + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h;
    };
    const auto fmt = [](double v) { return format_number(v, 6); };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame and tick labels
    out << "<rect x=\"" << margin_l << "\" y=\"" << margin_t << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int n_ticks = 5;
    for (int k = 0; k <= n_ticks; ++k) {
        const double fx = x_lo + (x_hi - x_lo) * k / n_ticks;
        const double fy = y_lo + (y_hi - y_lo) * k / n_ticks;
        const double px = to_px_x(fx);
        const double py = to_px_y(fy);
        out << "<line x1=\"" << px << "\" y1=\"" << margin_t + plot_h << "\" x2=\"" << px
            << "\" y2=\"" << margin_t + plot_h + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << margin_t + plot_h + 20
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n"
            << "<line x1=\"" << margin_l - 5 << "\" y1=\"" << py << "\" x2=\"" << margin_l
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << margin_l - 8 << "\" y=\"" << py + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
    }
    if (!spec.title.empty())
        out << "<text x=\"" << spec.width / 2 << "\" y=\"" << margin_t - 12
            << "\" font-size=\"14\" text-anchor=\"middle\">" << spec.title << "</text>\n";
    out << "<text x=\"" << margin_l + plot_w / 2 << "\" y=\"" << spec.height - 10
        << "\" font-size=\"12\" text-anchor=\"middle\">" << spec.x_label << "</text>\n";
    if (!spec.y_label.empty())
        out << "<text x=\"16\" y=\"" << margin_t + plot_h / 2
            << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
            << margin_t + plot_h / 2 << ")\">" << spec.y_label << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out << ' ';
        out << format_number(to_px_x(x[i]), 8) << ',' << format_number(to_px_y(y[i]), 8);
    }
    out << "\"/>\n</svg>\n";
}

} // namespace qcs
