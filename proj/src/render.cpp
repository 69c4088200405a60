#include "tileperiod/render.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace tileperiod {

namespace {

constexpr int cell = 24;

std::string colour(TileId id) {
    // Golden-ratio hue walk; saturation and lightness alternate so that
    // neighbouring ids stay apart.
    const double h = std::fmod(0.13 + 0.6180339887498949 * id, 1.0);
    const double s = id % 2 == 0 ? 0.65 : 0.45;
    const double l = id % 3 == 0 ? 0.55 : 0.70;
    auto f = [&](double n) {
        const double k = std::fmod(n + h * 12.0, 12.0);
        const double a = s * std::min(l, 1.0 - l);
        return l - a * std::max(-1.0, std::min({k - 3.0, 9.0 - k, 1.0}));
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(f(0) * 255)),
                  static_cast<int>(std::lround(f(8) * 255)), static_cast<int>(std::lround(f(4) * 255)));
    return buf;
}

std::string escape(const std::string& s) {
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

} // namespace

std::string render_svg(const io::Witness& w) {
    const auto& r = w.region;
    const int rx = r.wrap_x ? 2 : 1;
    const int ry = r.wrap_y ? 2 : 1;
    const int gw = r.width * rx * cell;
    const int gh = r.height * ry * cell;
    std::set<TileId> used(r.cells.begin(), r.cells.end());
    const int legend_h = static_cast<int>(used.size()) * (cell + 4);
    const int width = gw + 20 + 240;
    const int height = std::max(gh, legend_h) + 20;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<g transform=\"translate(10,10)\" stroke=\"#333\" stroke-width=\"0.5\">\n";
    // Row 0 is the bottom row.
    for (int ty = 0; ty < ry; ++ty) {
        for (int tx = 0; tx < rx; ++tx) {
            for (int y = 0; y < r.height; ++y) {
                for (int x = 0; x < r.width; ++x) {
                    const int px = (tx * r.width + x) * cell;
                    const int py = gh - (ty * r.height + y + 1) * cell;
                    o << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell << "\" height=\"" << cell
                      << "\" fill=\"" << colour(r.at(x, y)) << "\"/>\n";
                }
            }
        }
    }
    o << "</g>\n";
    o << "<rect x=\"10\" y=\"" << 10 + gh - r.height * cell << "\" width=\"" << r.width * cell << "\" height=\""
      << r.height * cell << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    o << "<g font-family=\"monospace\" font-size=\"12\">\n";
    int row = 0;
    for (const auto t : used) {
        const int y = 10 + row * (cell + 4);
        o << "<rect x=\"" << gw + 20 << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"" << colour(t) << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
        const std::string label = t < w.labels.size() ? w.labels[t] : "";
        o << "<text x=\"" << gw + 20 + cell + 6 << "\" y=\"" << y + cell - 7 << "\">" << t << " "
          << escape(label) << "</text>\n";
        ++row;
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

} // namespace tileperiod
