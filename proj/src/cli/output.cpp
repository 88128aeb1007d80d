// Copyright 2026 The poncelet-grid Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "poncelet/cli/output.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "poncelet/errors.hpp"

namespace poncelet::cli {

std::string format_double(double v, int digits) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

SvgCanvas::SvgCanvas(double x_min, double x_max, double y_min, double y_max, int width_px)
    : width_px_(width_px) {
  const double mx = 0.05 * (x_max - x_min);
  const double my = 0.05 * (y_max - y_min);
  x_min_ = x_min - mx;
  y_max_ = y_max + my;
  w_ = (x_max - x_min) + 2.0 * mx;
  h_ = (y_max - y_min) + 2.0 * my;
  unit_ = w_ / width_px_;
}

std::string SvgCanvas::pt(Point2 p) const {
  return format_double(p.x1 - x_min_, 7) + "," + format_double(y_max_ - p.x2, 7);
}

void SvgCanvas::polyline(const std::vector<Point2>& pts, const std::string& stroke, double width, bool closed) {
  if (pts.empty()) return;
  body_ += closed ? "  <polygon points=\"" : "  <polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) body_ += (i ? " " : "") + pt(pts[i]);
  body_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + format_double(width * unit_, 6) + "\"/>\n";
}

void SvgCanvas::segment(Point2 a, Point2 b, const std::string& stroke, double width) {
  polyline({a, b}, stroke, width);
}

void SvgCanvas::dot(Point2 p, double radius, const std::string& fill) {
  const std::string xy = pt(p);
  const auto comma = xy.find(',');
  body_ += "  <circle cx=\"" + xy.substr(0, comma) + "\" cy=\"" + xy.substr(comma + 1) + "\" r=\"" +
           format_double(radius * unit_, 6) + "\" fill=\"" + fill + "\"/>\n";
}

std::string SvgCanvas::str() const {
  const int height_px = static_cast<int>(width_px_ * h_ / w_ + 0.5);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_px_) + "\" height=\"" +
         std::to_string(height_px) + "\" viewBox=\"0 0 " + format_double(w_, 7) + " " + format_double(h_, 7) +
         "\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

const std::string& palette(int index) {
  static const std::array<std::string, 10> colors{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colors[static_cast<std::size_t>(((index % 10) + 10) % 10)];
}

}  // namespace poncelet::cli
