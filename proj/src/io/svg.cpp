#include "toricdyn/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "toricdyn/lattice/spectral.hpp"

namespace toricdyn::io {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string growth_svg(const dynamics::GrowthFit& fit) {
  const double width = 480, height = 320, margin = 40;
  const int count = static_cast<int>(fit.degrees.size());
  std::vector<double> ys;
  for (const auto& d : fit.degrees) ys.push_back(d > 0 ? lattice::log_abs(d) : 0.0);
  std::vector<double> ref;
  for (int l = 1; l <= count; ++l) ref.push_back(ys.empty() ? 0.0 : ys.front() + (l - 1) * std::log(fit.lambda));
  double lo = 0, hi = 1;
  for (double y : ys) hi = std::max(hi, y);
  for (double y : ref) hi = std::max(hi, y), lo = std::min(lo, y);
  auto px = [&](int l) { return margin + (width - 2 * margin) * (count > 1 ? (l - 1.0) / (count - 1) : 0.5); };
  auto py = [&](double y) { return height - margin - (height - 2 * margin) * (y - lo) / (hi - lo); };

  auto polyline = [&](const std::vector<double>& values, const std::string& style) {
    std::string s = "  <polyline fill=\"none\" " + style + " points=\"";
    for (int l = 1; l <= count; ++l) s += (l > 1 ? " " : "") + fmt(px(l)) + "," + fmt(py(values[l - 1]));
    return s + "\"/>\n";
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\">\n";
  out += "  <line x1=\"" + fmt(margin) + "\" y1=\"" + fmt(height - margin) + "\" x2=\"" + fmt(width - margin) + "\" y2=\"" +
         fmt(height - margin) + "\" stroke=\"black\"/>\n";
  out += "  <line x1=\"" + fmt(margin) + "\" y1=\"" + fmt(margin) + "\" x2=\"" + fmt(margin) + "\" y2=\"" + fmt(height - margin) +
         "\" stroke=\"black\"/>\n";
  out += "  <text x=\"" + fmt(width / 2) + "\" y=\"" + fmt(height - 8) + "\" text-anchor=\"middle\">l</text>\n";
  out += "  <text x=\"12\" y=\"" + fmt(height / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 12 " + fmt(height / 2) +
         ")\">log deg_" + std::to_string(fit.k) + "</text>\n";
  for (int l = 1; l <= count; ++l)
    out += "  <text x=\"" + fmt(px(l)) + "\" y=\"" + fmt(height - margin + 14) + "\" text-anchor=\"middle\" font-size=\"10\">" +
           std::to_string(l) + "</text>\n";
  if (count > 0) {
    out += polyline(ref, "stroke=\"gray\" stroke-dasharray=\"4 3\"");
    out += polyline(ys, "stroke=\"steelblue\" stroke-width=\"2\"");
  }
  return out + "</svg>\n";
}

}  // namespace toricdyn::io
