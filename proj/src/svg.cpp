#include "topoproj/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace topoproj {

namespace {

constexpr int kSize = 480;
constexpr int kMargin = 48;
constexpr int kInner = kSize - 2 * kMargin;

std::string fixed6(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

std::string header() {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
      << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kInner
      << "\" height=\"" << kInner << "\" fill=\"white\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    return s.str();
}

std::string text_label(double px, double py, const std::string& body) {
    std::ostringstream s;
    s << "<text x=\"" << fixed6(px) << "\" y=\"" << fixed6(py)
      << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#333333\">" << body << "</text>\n";
    return s.str();
}

}  // namespace

std::string render_diagram_svg(const PersistenceDiagram& d) {
    double max_coord = 0.0;
    for (const PersistencePair& pr : d.pairs) {
        max_coord = std::max(max_coord, pr.birth);
        if (!pr.infinite()) max_coord = std::max(max_coord, pr.death);
    }
    const double cap = max_coord > 0.0 ? 1.05 * max_coord : 1.0;
    const auto sx = [cap](double v) { return kMargin + v / cap * kInner; };
    const auto sy = [cap](double v) { return kSize - kMargin - v / cap * kInner; };

    std::ostringstream s;
    s << header();
    s << "<line x1=\"" << fixed6(sx(0.0)) << "\" y1=\"" << fixed6(sy(0.0)) << "\" x2=\""
      << fixed6(sx(cap)) << "\" y2=\"" << fixed6(sy(cap))
      << "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    for (const PersistencePair& pr : d.pairs) {
        if (pr.infinite()) continue;
        s << "<circle cx=\"" << fixed6(sx(pr.birth)) << "\" cy=\"" << fixed6(sy(pr.death))
          << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
    }
    for (const PersistencePair& pr : d.pairs) {
        if (!pr.infinite()) continue;
        const double px = sx(pr.birth), py = sy(cap);
        s << "<path d=\"M " << fixed6(px) << " " << fixed6(py - 5.0) << " L " << fixed6(px - 4.5)
          << " " << fixed6(py + 3.5) << " L " << fixed6(px + 4.5) << " " << fixed6(py + 3.5)
          << " Z\" fill=\"#d62728\"/>\n";
    }
    s << text_label(kMargin, kMargin - 10.0, "degree " + std::to_string(d.degree));
    s << text_label(kSize - kMargin - 90.0, kSize - kMargin + 24.0, "max " + fixed6(cap));
    s << "</svg>\n";
    return s.str();
}

std::string render_scatter_svg(const PointCloud& x) {
    double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
    if (x.size() > 0) {
        lo_x = hi_x = x.pts(0, 0);
        lo_y = hi_y = x.dim() > 1 ? x.pts(0, 1) : 0.0;
        for (int i = 0; i < x.size(); ++i) {
            const double px = x.pts(i, 0);
            const double py = x.dim() > 1 ? x.pts(i, 1) : 0.0;
            lo_x = std::min(lo_x, px);
            hi_x = std::max(hi_x, px);
            lo_y = std::min(lo_y, py);
            hi_y = std::max(hi_y, py);
        }
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    const double pad = 0.05 * span;
    const double scale = kInner / (span + 2.0 * pad);
    const auto sx = [&](double v) { return kMargin + (v - lo_x + pad) * scale; };
    const auto sy = [&](double v) { return kSize - kMargin - (v - lo_y + pad) * scale; };

    std::ostringstream s;
    s << header();
    for (int i = 0; i < x.size(); ++i) {
        const double px = x.pts(i, 0);
        const double py = x.dim() > 1 ? x.pts(i, 1) : 0.0;
        s << "<circle cx=\"" << fixed6(sx(px)) << "\" cy=\"" << fixed6(sy(py))
          << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    s << text_label(kMargin, kMargin - 10.0,
                    std::to_string(x.size()) + " points, showing first two coordinates");
    s << "</svg>\n";
    return s.str();
}

}  // namespace topoproj
