// Copyright 2026 The powergame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "powergame/geometry.h"

#include <algorithm>
#include <cmath>

namespace powergame {
namespace {

double Cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double Distance(const Point2& a, const Point2& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double SegmentDistance(const Point2& a, const Point2& b, const Point2& p) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return Distance(a, p);
  const double t =
      std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2, 0.0, 1.0);
  return Distance({a[0] + t * dx, a[1] + t * dy}, p);
}

}  // namespace

std::vector<Point2> DeduplicatePoints(std::span<const Point2> points,
                                      double tol) {
  std::vector<Point2> kept;
  for (const Point2& p : points) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Point2& q) {
      return Distance(p, q) <= tol;
    });
    if (!dup) kept.push_back(p);
  }
  return kept;
}

std::vector<Point2> ConvexHull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  // Andrew's monotone chain.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && Cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool ConvexPolygonContains(std::span<const Point2> polygon, const Point2& p,
                           double slack) {
  if (polygon.empty()) return false;
  if (polygon.size() == 1) return Distance(polygon[0], p) <= slack;
  if (polygon.size() == 2) {
    return SegmentDistance(polygon[0], polygon[1], p) <= slack;
  }
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % polygon.size()];
    const double len = Distance(a, b);
    // Signed distance of p to the left of edge a->b.
    if (len > 0.0 && Cross(a, b, p) / len < -slack) return false;
  }
  return true;
}

}  // namespace powergame
