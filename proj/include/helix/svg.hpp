/// @file svg.hpp
/// Self-contained SVG renderer for the restricted-root line arrangement:
/// rays through the origin clipped to the unit disc, accumulation rays
/// dashed. Output is deterministic, no timestamps.

#pragma once

#include "helix/restriction.hpp"

#include <cmath>
#include <cstdio>

namespace helix {

inline std::string svg_coord(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

inline std::string arrangement_svg(const Arrangement& arr, const std::string& caption)
{
    const double cx = 400.0, cy = 400.0, radius = 370.0;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" "
         "width=\"800\" height=\"800\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
    s += "<circle cx=\"400\" cy=\"400\" r=\"370\" fill=\"none\" stroke=\"#cccccc\" "
         "stroke-width=\"1\"/>\n";
    auto endpoint = [&](const IntPair& dir, int sign) {
        double dx = to_double(dir[0]), dy = to_double(dir[1]);
        double len = std::sqrt(dx * dx + dy * dy);
        double x = cx + sign * radius * dx / len;
        double y = cy - sign * radius * dy / len; // mathematical orientation
        return std::pair<double, double>(x, y);
    };
    IntPair acc = arr.accumulation_direction;
    for (const auto& line : arr.lines) {
        if (line == acc)
            continue;
        auto [x1, y1] = endpoint(line, +1);
        auto [x2, y2] = endpoint(line, -1);
        s += "<line x1=\"" + svg_coord(x1) + "\" y1=\"" + svg_coord(y1) + "\" x2=\"" +
             svg_coord(x2) + "\" y2=\"" + svg_coord(y2) +
             "\" stroke=\"#1a1a1a\" stroke-width=\"1\"/>\n";
    }
    auto [ax1, ay1] = endpoint(acc, +1);
    auto [ax2, ay2] = endpoint(acc, -1);
    s += "<line x1=\"" + svg_coord(ax1) + "\" y1=\"" + svg_coord(ay1) + "\" x2=\"" +
         svg_coord(ax2) + "\" y2=\"" + svg_coord(ay2) +
         "\" stroke=\"#c01616\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    s += "<text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"14\" "
         "fill=\"#333333\">" + caption + "</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace helix
