#pragma once

#include <string>
#include <vector>

namespace circdist {

/// Minimal static SVG line chart (one polyline plus axes and tick labels).
std::string svg_line_chart(const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace circdist
