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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "poncelet/point.hpp"

namespace poncelet::cli {

/// printf %.*g.
std::string format_double(double v, int digits = 17);

/// Writes to a temporary file next to `path` and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Minimal SVG writer in model coordinates (x1 right, x2 up).
class SvgCanvas {
 public:
  /// The view box covers [x_min, x_max] x [y_min, y_max] plus a 5% margin.
  SvgCanvas(double x_min, double x_max, double y_min, double y_max, int width_px = 800);

  void polyline(const std::vector<Point2>& pts, const std::string& stroke, double width, bool closed = false);
  void segment(Point2 a, Point2 b, const std::string& stroke, double width);
  void dot(Point2 p, double radius, const std::string& fill);
  std::string str() const;

 private:
  std::string pt(Point2 p) const;

  double x_min_, y_max_, w_, h_;
  int width_px_;
  double unit_;
  std::string body_;
};

/// Fixed stroke palette, cycled by set index.
const std::string& palette(int index);

}  // namespace poncelet::cli
