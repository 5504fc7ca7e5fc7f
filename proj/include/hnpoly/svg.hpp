#pragma once

#include <string>
#include <vector>

#include "hnpoly/polygon.hpp"

namespace hnpoly {

struct SvgPolygon {
    ConcavePolygon poly;
    std::string label;
    std::string style;  // stroke override, e.g. "#d62728"; empty = palette
};

struct SvgMark {
    Point at;
    std::string label;  // e.g. "x", "x^"
};

struct SvgRender {
    std::vector<SvgPolygon> polygons;
    std::vector<SvgMark> marks;
    double scale = 80.0;  // pixels per unit
};

// Standalone SVG document: one polyline per polygon, circled marks with
// labels, a legend, and exact-fraction tooltips on every element. An empty
// render yields a valid document whose legend reads "no data".
std::string render_svg(const SvgRender& render);

}  // namespace hnpoly
