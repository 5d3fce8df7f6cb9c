#include "svg_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "entmap/version.hpp"

namespace entmap::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
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

struct Range {
    double lo = 0.0, hi = 1.0;

    void fit(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

} // namespace

std::string SvgPlot::render() const {
    // data ranges with 5% padding; empty plots default to the unit square
    bool have = false;
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    auto fit = [&](const std::array<double, 2>& p) {
        if (!have) {
            xlo = xhi = p[0];
            ylo = yhi = p[1];
            have = true;
        } else {
            xlo = std::min(xlo, p[0]);
            xhi = std::max(xhi, p[0]);
            ylo = std::min(ylo, p[1]);
            yhi = std::max(yhi, p[1]);
        }
    };
    for (const auto& p : scatter) fit(p);
    for (const auto& p : path) fit(p);
    if (!have) {
        xlo = ylo = 0.0;
        xhi = yhi = 1.0;
    }
    if (xhi - xlo < 1e-12) {
        xlo -= 0.5;
        xhi += 0.5;
    }
    if (yhi - ylo < 1e-12) {
        ylo -= 0.5;
        yhi += 0.5;
    }
    const double xpad = 0.05 * (xhi - xlo);
    const double ypad = 0.05 * (yhi - ylo);
    xlo -= xpad;
    xhi += xpad;
    ylo -= ypad;
    yhi += ypad;

    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin;
    auto sx = [&](double x) { return kMargin + (x - xlo) / (xhi - xlo) * plot_w; };
    auto sy = [&](double y) { return kHeight - kMargin - (y - ylo) / (yhi - ylo) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<!-- entmap " << kVersion << " config=" << xml_escape(config.dump())
        << " -->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";

    // frame
    svg << "  <rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin) << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks and labels, 5 per axis
    svg << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double tx = xlo + (xhi - xlo) * i / 4.0;
        const double px = sx(tx);
        svg << "    <line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kHeight - kMargin)
            << "\" x2=\"" << fmt(px) << "\" y2=\"" << fmt(kHeight - kMargin + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "    <text x=\"" << fmt(px) << "\" y=\"" << fmt(kHeight - kMargin + 18)
            << "\" text-anchor=\"middle\">" << fmt(tx) << "</text>\n";

        const double ty = ylo + (yhi - ylo) * i / 4.0;
        const double py = sy(ty);
        svg << "    <line x1=\"" << fmt(kMargin - 5) << "\" y1=\"" << fmt(py) << "\" x2=\""
            << fmt(kMargin) << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        svg << "    <text x=\"" << fmt(kMargin - 8) << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\">" << fmt(ty) << "</text>\n";
    }
    svg << "    <text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 6)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(x_label)
        << "</text>\n";
    svg << "    <text x=\"14\" y=\"" << fmt(kHeight / 2)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 "
        << fmt(kHeight / 2) << ")\">" << xml_escape(y_label) << "</text>\n";
    svg << "    <text x=\"" << fmt(kWidth - kMargin) << "\" y=\"16\" text-anchor=\"end\" "
           "font-size=\"10\" fill=\"#555\">negativity: (||rho^T||_1 - 1)/2, logs base 2"
           "</text>\n";
    svg << "  </g>\n";

    if (!scatter.empty()) {
        svg << "  <g fill=\"#2266aa\" fill-opacity=\"0.6\">\n";
        for (const auto& p : scatter)
            svg << "    <circle cx=\"" << fmt(sx(p[0])) << "\" cy=\"" << fmt(sy(p[1]))
                << "\" r=\"2\"/>\n";
        svg << "  </g>\n";
    }
    if (!path.empty()) {
        svg << "  <polyline fill=\"none\" stroke=\"#cc3311\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(sx(path[i][0])) << ',' << fmt(sy(path[i][1]));
        }
        svg << "\"/>\n";
        svg << "  <g fill=\"#cc3311\">\n";
        for (const auto& p : path)
            svg << "    <circle cx=\"" << fmt(sx(p[0])) << "\" cy=\"" << fmt(sy(p[1]))
                << "\" r=\"2.5\"/>\n";
        svg << "  </g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace entmap::cli
