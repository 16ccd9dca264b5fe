#include "biphoton/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace biphoton {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 52;

const char* kColors[] = {"#d4a017", "#1f5fa8", "#3a9d4f", "#b03030", "#7a4fa8", "#666666"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

std::string SvgPlot::to_string() const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("SvgPlot: series size mismatch");
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmin < xmax)) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (!(ymin < ymax)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<!-- biphoton-convert plot -->\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks: 5 per axis
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        svg << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
            << num(px(xv)) << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
        svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << num(py(yv)) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << num(py(yv)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << num(py(yv) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << num(yv) << "</text>\n";
    }

    std::size_t color = 0;
    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[color % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i)
                svg << ' ';
            svg << num(px(s.x[i])) << ',' << num(py(s.y[i]));
        }
        svg << "\"/>\n";
        ++color;
    }

    // legend
    double ly = kMarginTop + 14.0;
    color = 0;
    for (const auto& s : series) {
        const double lx = kMarginLeft + plot_w - 180.0;
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 24)
            << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << kColors[color % 6]
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly) << "\" font-size=\"12\">"
            << s.name << "</text>\n";
        ly += 18.0;
        ++color;
    }

    if (!title.empty())
        svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">"
            << title << "</text>\n";
    if (!x_label.empty())
        svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
            << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
    if (!y_label.empty())
        svg << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
            << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
            << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace biphoton
