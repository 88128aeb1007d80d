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

#include "poncelet/quadrature.hpp"

#include <cmath>
#include <limits>

namespace poncelet::quadrature {

namespace {

double refine(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss8(f, a, mid);
  const double right = gauss8(f, mid, b);
  const double sum = left + right;
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(sum);
  if (depth >= 24 || std::abs(sum - whole) <= std::max(tol, floor)) return sum;
  return refine(f, a, mid, left, tol, depth + 1) + refine(f, mid, b, right, tol, depth + 1);
}

}  // namespace

double adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  return refine(f, a, b, gauss8(f, a, b), abs_tol, 0);
}

}  // namespace poncelet::quadrature
