#include "swipt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace swipt {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 460;
constexpr int kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

}  // namespace

void write_svg_chart(const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series,
                     std::ostream& out) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const SvgSeries& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";

    // axes and ticks
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
        << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + ph << "\" stroke=\"black\"/>\n";
    const int ticks = 5;
    out.precision(4);
    for (int i = 0; i <= ticks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / ticks;
        const double yv = ymin + (ymax - ymin) * i / ticks;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(xv)
            << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 18
            << "\" text-anchor=\"middle\">" << xv << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft
            << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\">" << yv << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\""
        << "rotate(-90 16 " << kTop + ph / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const SvgSeries& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        const double ly = kTop + 16 + 18 * static_cast<double>(si);
        out << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
            << kLeft + pw + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << kLeft + pw + 40 << "\" y=\"" << ly + 4 << "\">" << s.label
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace swipt
