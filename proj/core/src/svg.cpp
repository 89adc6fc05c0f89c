#include "cope/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace cope {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void append_path(std::string& out, const PlanePolygon& poly, const char* stroke, double scale,
                 double ox, double oy) {
    if (poly.empty()) return;
    out += "  <path d=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
        out += i == 0 ? "M " : "L ";
        out += fmt(ox + scale * poly[i][0]);
        out += ' ';
        out += fmt(oy - scale * poly[i][1]);
        out += ' ';
    }
    out += "Z\" fill=\"none\" stroke=\"";
    out += stroke;
    out += "\" stroke-width=\"2\"/>\n";
}

} // namespace

std::string render_nested_svg(const PlanePolygon& outer, const PlanePolygon& inner,
                              const std::optional<PlanePolygon>& witness) {
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    auto scan = [&](const PlanePolygon& p) {
        for (const auto& v : p) {
            min_x = std::min(min_x, v[0]);
            max_x = std::max(max_x, v[0]);
            min_y = std::min(min_y, v[1]);
            max_y = std::max(max_y, v[1]);
        }
    };
    scan(outer);
    scan(inner);
    if (witness) scan(*witness);
    const double span = std::max(max_x - min_x, max_y - min_y);
    const double scale = span > 0 ? 360.0 / span : 1.0;
    const double ox = 20.0 - scale * min_x;
    const double oy = 380.0 + scale * min_y;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
                      "viewBox=\"0 0 400 400\">\n";
    append_path(out, outer, "black", scale, ox, oy);
    append_path(out, inner, "green", scale, ox, oy);
    if (witness) append_path(out, *witness, "red", scale, ox, oy);
    out += "</svg>\n";
    return out;
}

} // namespace cope
