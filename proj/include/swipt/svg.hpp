#ifndef SWIPT_SVG_HPP
#define SWIPT_SVG_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace swipt {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal vector-graphics line chart, enough to eyeball a sweep.
void write_svg_chart(const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series,
                     std::ostream& out);

}  // namespace swipt

#endif
