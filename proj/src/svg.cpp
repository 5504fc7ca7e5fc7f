#include "hnpoly/svg.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace hnpoly {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};
constexpr double kPad = 48.0;

std::string dec(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string point_tooltip(const Point& p) {
    return "(" + p.x.str() + ", " + p.y.str() + ")";
}

}  // namespace

std::string render_svg(const SvgRender& render) {
    // Fit the frame to the data.
    double max_x = 1.0, max_y = 1.0;
    for (const auto& entry : render.polygons) {
        max_x = std::max(max_x, entry.poly.width().to_double());
        for (const auto& v : entry.poly.vertices()) max_y = std::max(max_y, v.y.to_double());
    }
    for (const auto& mark : render.marks) {
        max_x = std::max(max_x, mark.at.x.to_double());
        max_y = std::max(max_y, mark.at.y.to_double());
    }

    const double sc = render.scale > 0 ? render.scale : 80.0;
    const double width = max_x * sc + 2 * kPad;
    const double legend_height = 22.0 * (render.polygons.empty() ? 1 : render.polygons.size());
    const double height = max_y * sc + 2 * kPad + legend_height;
    const auto px = [&](const Rat& x) { return kPad + x.to_double() * sc; };
    const auto py = [&](const Rat& y) { return kPad + (max_y - y.to_double()) * sc; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << dec(width) << " "
        << dec(height) << "\" width=\"" << dec(width) << "\" height=\"" << dec(height) << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes along the data frame.
    svg << "  <g stroke=\"#888888\" stroke-width=\"1\">\n";
    svg << "    <line x1=\"" << dec(kPad) << "\" y1=\"" << dec(py(Rat(0))) << "\" x2=\""
        << dec(kPad + max_x * sc) << "\" y2=\"" << dec(py(Rat(0))) << "\"/>\n";
    svg << "    <line x1=\"" << dec(kPad) << "\" y1=\"" << dec(py(Rat(0))) << "\" x2=\""
        << dec(kPad) << "\" y2=\"" << dec(kPad) << "\"/>\n";
    svg << "  </g>\n";

    for (std::size_t i = 0; i < render.polygons.size(); ++i) {
        const auto& entry = render.polygons[i];
        const std::string stroke =
            entry.style.empty() ? kPalette[i % kPalette.size()] : entry.style;
        svg << "  <polyline fill=\"none\" stroke=\"" << xml_escape(stroke)
            << "\" stroke-width=\"2\" points=\"";
        std::string tooltip;
        bool first = true;
        for (const auto& v : entry.poly.vertices()) {
            if (!first) {
                svg << " ";
                tooltip += " ";
            }
            first = false;
            svg << dec(px(v.x)) << "," << dec(py(v.y));
            tooltip += point_tooltip(v);
        }
        svg << "\">\n    <title>" << xml_escape(entry.label.empty() ? tooltip
                                                                    : entry.label + ": " + tooltip)
            << "</title>\n  </polyline>\n";
    }

    for (const auto& mark : render.marks) {
        svg << "  <circle cx=\"" << dec(px(mark.at.x)) << "\" cy=\"" << dec(py(mark.at.y))
            << "\" r=\"5\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\">\n"
            << "    <title>" << xml_escape(mark.label + " = " + point_tooltip(mark.at))
            << "</title>\n  </circle>\n";
        svg << "  <text x=\"" << dec(px(mark.at.x) + 8) << "\" y=\"" << dec(py(mark.at.y) - 8)
            << "\" font-size=\"13\" font-family=\"monospace\">" << xml_escape(mark.label)
            << "</text>\n";
    }

    // Legend.
    const double legend_top = max_y * sc + 2 * kPad;
    svg << "  <g font-size=\"13\" font-family=\"monospace\">\n";
    if (render.polygons.empty()) {
        svg << "    <text x=\"" << dec(kPad) << "\" y=\"" << dec(legend_top)
            << "\">no data</text>\n";
    } else {
        for (std::size_t i = 0; i < render.polygons.size(); ++i) {
            const auto& entry = render.polygons[i];
            const std::string stroke =
                entry.style.empty() ? kPalette[i % kPalette.size()] : entry.style;
            const double y = legend_top + 18.0 * static_cast<double>(i);
            svg << "    <line x1=\"" << dec(kPad) << "\" y1=\"" << dec(y - 4) << "\" x2=\""
                << dec(kPad + 24) << "\" y2=\"" << dec(y - 4) << "\" stroke=\""
                << xml_escape(stroke) << "\" stroke-width=\"2\"/>\n";
            svg << "    <text x=\"" << dec(kPad + 32) << "\" y=\"" << dec(y) << "\">"
                << xml_escape(entry.label.empty() ? ("polygon " + std::to_string(i + 1))
                                                  : entry.label)
                << "</text>\n";
        }
    }
    svg << "  </g>\n</svg>\n";
    return svg.str();
}

}  // namespace hnpoly
