#include "circdist/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace circdist {

std::string svg_line_chart(const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const std::string& title, const std::string& x_label,
                           const std::string& y_label) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("svg_line_chart: mismatched or empty series");
  const double width = 720.0, height = 480.0;
  const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
  double x_lo = xs.front(), x_hi = xs.front();
  double y_lo = ys.front(), y_hi = ys.front();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_lo = std::min(x_lo, xs[i]);
    x_hi = std::max(x_hi, xs[i]);
    y_lo = std::min(y_lo, ys[i]);
    y_hi = std::max(y_hi, ys[i]);
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return mt + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x_lo + (x_hi - x_lo) * t / 4.0;
    const double fy = y_lo + (y_hi - y_lo) * t / 4.0;
    out << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << fx << "</text>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << fy << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << y_label
      << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out << " ";
    out << px(xs[i]) << "," << py(ys[i]);
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace circdist
