#pragma once

#include <string>
#include <vector>

namespace biphoton {

// Minimal line-plot writer: axes box, tick labels, one polyline per series,
// legend. No timestamps; output depends only on the input data.
struct SvgSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;

    std::string to_string() const;
};

} // namespace biphoton
