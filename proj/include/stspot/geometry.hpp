// Copyright 2026 The stspot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "stspot/error.hpp"

namespace stspot {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
};

/// Closed polygon in pixel coordinates. At least 3 finite vertices;
/// orientation is normalized to counter-clockwise (positive signed area)
/// on construction.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  double area() const;
  BBox bbox() const;
  /// Mean of the vertices; used for deterministic reading-order decisions.
  Point centroid() const;
  /// Boundary-inclusive point containment.
  bool contains(const Point& p) const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point> vertices_;
};

/// Axis-aligned rectangle helper, counter-clockwise.
Polygon rect_polygon(double x_min, double y_min, double x_max, double y_max);

struct IouResult {
  double value = 0.0;
  /// True when a malformed (self-intersecting) input forced the bbox path.
  bool bbox_fallback = false;
};

double bbox_iou(const BBox& a, const BBox& b);

/// Intersection over union via exact polygon clipping. Malformed inputs
/// (self-intersecting or zero-area) fall back to bbox IoU with the flag set,
/// which scores 0 for truly degenerate shapes.
IouResult iou(const Polygon& a, const Polygon& b);

/// Horizontal gap between the two bounding boxes, provided they overlap
/// vertically by at least half the shorter box height; nullopt otherwise.
/// Boxes that overlap horizontally have gap 0.
std::optional<double> gap_distance(const Polygon& a, const Polygon& b);

/// Convex hull of both vertex sets. Throws DegenerateGeometry when the hull
/// collapses below 3 vertices.
Polygon merge_polygons(const Polygon& a, const Polygon& b);

}  // namespace stspot
