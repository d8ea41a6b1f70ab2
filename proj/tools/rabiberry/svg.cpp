#include "svg.hpp"

#include "csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace rabiberry::cli {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 150.0;  // room for the legend

constexpr std::array<const char*, 9> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};

std::string num(double v) {
    // two decimals is plenty for pixel coordinates
    return format_double(std::round(v * 100.0) / 100.0);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo{std::numeric_limits<double>::infinity()};
    double hi{-std::numeric_limits<double>::infinity()};
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle() {
        if (!(lo <= hi)) lo = 0.0, hi = 1.0;
        if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    }
};

void draw_panel(std::string& out, const Panel& p, double x0, double w) {
    const double y0 = kMarginTop;
    const double h = kHeight - kMarginTop - kMarginBottom;
    Range rx, ry;
    for (const auto& s : p.series) {
        for (double v : s.x) rx.add(v);
        for (double v : s.y) ry.add(v);
    }
    rx.settle();
    ry.settle();
    auto px = [&](double v) { return x0 + (v - rx.lo) / (rx.hi - rx.lo) * w; };
    auto py = [&](double v) { return y0 + h - (v - ry.lo) / (ry.hi - ry.lo) * h; };

    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(x0 + w / 2) + "\" y=\"" + num(y0 - 12) + "\" text-anchor=\"middle\">" +
           escape(p.title) + "</text>\n";
    out += "<text x=\"" + num(x0 + w / 2) + "\" y=\"" + num(y0 + h + 32) + "\" text-anchor=\"middle\">" +
           escape(p.x_label) + "</text>\n";
    out += "<text x=\"" + num(x0 - 45) + "\" y=\"" + num(y0 + h / 2) + "\" transform=\"rotate(-90 " +
           num(x0 - 45) + " " + num(y0 + h / 2) + ")\" text-anchor=\"middle\">" + escape(p.y_label) +
           "</text>\n";
    // axis extremes
    out += "<text x=\"" + num(x0) + "\" y=\"" + num(y0 + h + 14) + "\" font-size=\"10\">" + format_double(rx.lo) +
           "</text>\n";
    out += "<text x=\"" + num(x0 + w) + "\" y=\"" + num(y0 + h + 14) + "\" font-size=\"10\" text-anchor=\"end\">" +
           format_double(rx.hi) + "</text>\n";
    out += "<text x=\"" + num(x0 - 4) + "\" y=\"" + num(y0 + h) + "\" font-size=\"10\" text-anchor=\"end\">" +
           num(ry.lo) + "</text>\n";
    out += "<text x=\"" + num(x0 - 4) + "\" y=\"" + num(y0 + 10) + "\" font-size=\"10\" text-anchor=\"end\">" +
           num(ry.hi) + "</text>\n";

    for (std::size_t i = 0; i < p.series.size(); ++i) {
        const auto& s = p.series[i];
        const char* color = kColors[i % kColors.size()];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\"";
        if (s.dashed) out += " stroke-dasharray=\"6 4\"";
        out += " points=\"";
        const std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            if (k) out += ' ';
            out += num(px(s.x[k])) + "," + num(py(s.y[k]));
        }
        out += "\"/>\n";
        const double ly = y0 + h + 50 + 14.0 * static_cast<double>(i % 6);
        const double lx = x0 + (i / 6) * 130.0;
        out += "<text x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" font-size=\"11\" fill=\"" + color + "\">" +
               escape(s.name) + "</text>\n";
    }
}

} // namespace

std::string render_svg(const std::vector<Panel>& panels) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" "
                      "height=\"600\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    const double n = static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    const double slot = kWidth / n;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double x0 = slot * static_cast<double>(i) + kMarginLeft;
        draw_panel(out, panels[i], x0, slot - kMarginLeft - kMarginRight);
    }
    out += "</svg>\n";
    return out;
}

} // namespace rabiberry::cli
