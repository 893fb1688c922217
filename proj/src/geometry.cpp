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

#include "stspot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace stspot {
namespace {

namespace bg = boost::geometry;
using BoostPoint = bg::model::d2::point_xy<double>;
using BoostPolygon = bg::model::polygon<BoostPoint, /*ClockWise=*/false, /*Closed=*/true>;

double signed_area(const std::vector<Point>& vertices) {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % vertices.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

BoostPolygon to_boost(const Polygon& polygon) {
  BoostPolygon out;
  for (const Point& p : polygon.vertices()) {
    bg::append(out.outer(), BoostPoint(p.x, p.y));
  }
  bg::append(out.outer(), BoostPoint(polygon.vertices().front().x, polygon.vertices().front().y));
  return out;
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  const double c = cross(a, b, p);
  const double scale = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
  if (std::abs(c) > 1e-9 * scale * scale) return false;
  return p.x >= std::min(a.x, b.x) - 1e-12 && p.x <= std::max(a.x, b.x) + 1e-12 &&
         p.y >= std::min(a.y, b.y) - 1e-12 && p.y <= std::max(a.y, b.y) + 1e-12;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw Error(ErrorCode::kDegenerateGeometry, "polygon needs at least 3 vertices");
  }
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kDegenerateGeometry, "polygon has a non-finite coordinate");
    }
  }
  if (signed_area(vertices_) < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
  }
}

double Polygon::area() const { return std::abs(signed_area(vertices_)); }

BBox Polygon::bbox() const {
  BBox box{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
           std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const Point& p : vertices_) {
    box.x_min = std::min(box.x_min, p.x);
    box.y_min = std::min(box.y_min, p.y);
    box.x_max = std::max(box.x_max, p.x);
    box.y_max = std::max(box.y_max, p.y);
  }
  return box;
}

Point Polygon::centroid() const {
  Point c;
  for (const Point& p : vertices_) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(vertices_.size());
  c.y /= static_cast<double>(vertices_.size());
  return c;
}

bool Polygon::contains(const Point& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (on_segment(vertices_[i], vertices_[(i + 1) % vertices_.size()], p)) return true;
  }
  // Ray casting toward +x.
  bool inside = false;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[(i + 1) % vertices_.size()];
    const bool crosses = (a.y > p.y) != (b.y > p.y);
    if (crosses && p.x < a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y)) {
      inside = !inside;
    }
  }
  return inside;
}

Polygon rect_polygon(double x_min, double y_min, double x_max, double y_max) {
  return Polygon({{x_min, y_min}, {x_max, y_min}, {x_max, y_max}, {x_min, y_max}});
}

double bbox_iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

IouResult iou(const Polygon& a, const Polygon& b) {
  const BoostPolygon ba = to_boost(a);
  const BoostPolygon bb = to_boost(b);
  if (!bg::is_valid(ba) || !bg::is_valid(bb)) {
    // Self-intersecting shapes clip to bbox overlap; collinear zero-area
    // shapes land here too and score 0 through their degenerate bbox.
    return {bbox_iou(a.bbox(), b.bbox()), true};
  }
  if (a.area() <= 0.0 || b.area() <= 0.0) {
    return {0.0, false};
  }
  std::vector<BoostPolygon> pieces;
  bg::intersection(ba, bb, pieces);
  double inter = 0.0;
  for (const BoostPolygon& piece : pieces) inter += bg::area(piece);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return {0.0, false};
  return {std::clamp(inter / uni, 0.0, 1.0), false};
}

std::optional<double> gap_distance(const Polygon& a, const Polygon& b) {
  const BBox box_a = a.bbox();
  const BBox box_b = b.bbox();
  const double overlap = std::min(box_a.y_max, box_b.y_max) - std::max(box_a.y_min, box_b.y_min);
  const double shorter = std::min(box_a.height(), box_b.height());
  if (overlap < 0.5 * shorter) return std::nullopt;
  const bool a_left = box_a.x_min < box_b.x_min ||
                      (box_a.x_min == box_b.x_min && box_a.x_max <= box_b.x_max);
  const BBox& left = a_left ? box_a : box_b;
  const BBox& right = a_left ? box_b : box_a;
  return std::max(0.0, right.x_min - left.x_max);
}

Polygon merge_polygons(const Polygon& a, const Polygon& b) {
  std::vector<Point> points = a.vertices();
  points.insert(points.end(), b.vertices().begin(), b.vertices().end());
  std::sort(points.begin(), points.end(), [](const Point& p, const Point& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Andrew monotone chain; strict turns drop collinear points.
  const std::size_t n = points.size();
  std::vector<Point> hull(2 * n);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], points[i]) <= 0.0) --h;
    hull[h++] = points[i];
  }
  const std::size_t lower = h + 1;
  for (std::size_t i = n; i-- > 1;) {
    while (h >= lower && cross(hull[h - 2], hull[h - 1], points[i - 1]) <= 0.0) --h;
    hull[h++] = points[i - 1];
  }
  hull.resize(h > 0 ? h - 1 : 0);
  if (hull.size() < 3) {
    throw Error(ErrorCode::kDegenerateGeometry, "merged hull collapses below 3 vertices");
  }
  return Polygon(std::move(hull));
}

}  // namespace stspot
