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

#ifndef POWERGAME_GEOMETRY_H_
#define POWERGAME_GEOMETRY_H_

#include <array>
#include <span>
#include <vector>

namespace powergame {

using Point2 = std::array<double, 2>;

// Drops points within `tol` (Euclidean) of an earlier kept point.
std::vector<Point2> DeduplicatePoints(std::span<const Point2> points,
                                      double tol);

// Convex hull in counter-clockwise order starting from the lexicographically
// smallest vertex. Collinear boundary points are dropped; one or two
// vertices are returned for degenerate inputs.
std::vector<Point2> ConvexHull(std::span<const Point2> points);

// Whether `p` lies in the convex polygon (CCW vertices) with `slack` margin.
// Polygons with one or two vertices are treated as a point and a segment.
bool ConvexPolygonContains(std::span<const Point2> polygon, const Point2& p,
                           double slack);

}  // namespace powergame

#endif  // POWERGAME_GEOMETRY_H_
