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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stspot/geometry.hpp"

using namespace stspot;
using doctest::Approx;

namespace {

Polygon random_rect(std::mt19937_64& rng) {
  auto coord = [&] { return static_cast<double>(rng() % 400); };
  const double x = coord();
  const double y = coord();
  const double w = 1.0 + static_cast<double>(rng() % 120);
  const double h = 1.0 + static_cast<double>(rng() % 40);
  return rect_polygon(x, y, x + w, y + h);
}

Polygon random_convex(std::mt19937_64& rng) {
  // Points on a circle, ordered by angle, stay simple and convex.
  const double cx = static_cast<double>(rng() % 300);
  const double cy = static_cast<double>(rng() % 300);
  const double r = 5.0 + static_cast<double>(rng() % 60);
  const std::size_t n = 3 + rng() % 6;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * M_PI * (static_cast<double>(i) +
                                       0.8 * static_cast<double>(rng() % 100) / 100.0) /
                         static_cast<double>(n);
    pts.push_back({cx + r * std::cos(angle), cy + r * std::sin(angle)});
  }
  return Polygon(pts);
}

}  // namespace

TEST_CASE("polygon construction") {
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {std::nan(""), 0}}), Error);

  // Clockwise input is reversed to counter-clockwise.
  const Polygon cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  const Polygon ccw({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(cw.vertices().front() == Point{1, 0});
  CHECK(cw.area() == Approx(1.0));
  CHECK(ccw.area() == Approx(1.0));

  const BBox box = ccw.bbox();
  CHECK(box.x_min == 0.0);
  CHECK(box.x_max == 1.0);
  CHECK(box.height() == Approx(1.0));
  CHECK(ccw.centroid().x == Approx(0.5));

  CHECK(ccw.contains({0.5, 0.5}));
  CHECK(ccw.contains({0.0, 0.5}));  // boundary
  CHECK_FALSE(ccw.contains({1.5, 0.5}));
}

TEST_CASE("iou") {
  const Polygon unit = rect_polygon(0, 0, 1, 1);
  SUBCASE("identical squares") {
    const IouResult r = iou(unit, unit);
    CHECK(r.value == Approx(1.0));
    CHECK_FALSE(r.bbox_fallback);
  }
  SUBCASE("half-offset squares") {
    // Intersection 0.5, union 1.5.
    const Polygon shifted = rect_polygon(0.5, 0, 1.5, 1);
    CHECK(iou(unit, shifted).value == Approx(1.0 / 3.0));
  }
  SUBCASE("disjoint squares") {
    CHECK(iou(unit, rect_polygon(5, 5, 6, 6)).value == 0.0);
  }
  SUBCASE("zero-area polygon") {
    const Polygon line({{0, 0}, {1, 0}, {2, 0}});
    const IouResult r = iou(line, unit);
    CHECK(r.value == 0.0);
  }
  SUBCASE("self-intersecting input falls back to bbox") {
    const Polygon bowtie({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
    const IouResult r = iou(bowtie, unit);
    CHECK(r.bbox_fallback);
    CHECK(r.value == Approx(1.0));  // same bbox
  }
  SUBCASE("properties on random polygons") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const Polygon a = trial % 2 == 0 ? random_rect(rng) : random_convex(rng);
      const Polygon b = trial % 3 == 0 ? random_rect(rng) : random_convex(rng);
      const double ab = iou(a, b).value;
      const double ba = iou(b, a).value;
      CHECK(ab == Approx(ba).epsilon(1e-9));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
      CHECK(iou(a, a).value == Approx(1.0));
    }
  }
}

TEST_CASE("gap distance") {
  SUBCASE("abutting boxes") {
    CHECK(gap_distance(rect_polygon(0, 0, 10, 10), rect_polygon(10, 0, 20, 10)) == 0.0);
  }
  SUBCASE("four-pixel gap") {
    const auto gap = gap_distance(rect_polygon(0, 0, 10, 10), rect_polygon(14, 0, 24, 10));
    REQUIRE(gap.has_value());
    CHECK(*gap == Approx(4.0));
  }
  SUBCASE("stacked boxes are incompatible") {
    CHECK_FALSE(gap_distance(rect_polygon(0, 0, 10, 10), rect_polygon(0, 20, 10, 30)).has_value());
  }
  SUBCASE("half-height vertical overlap is the boundary") {
    // Boxes of height 10; overlap exactly 5.
    CHECK(gap_distance(rect_polygon(0, 0, 10, 10), rect_polygon(12, 5, 22, 15)).has_value());
    // Overlap 4.9 < 5.
    CHECK_FALSE(gap_distance(rect_polygon(0, 0, 10, 10), rect_polygon(12, 5.1, 22, 15.1)).has_value());
  }
  SUBCASE("horizontally overlapping boxes have zero gap") {
    CHECK(gap_distance(rect_polygon(0, 0, 10, 10), rect_polygon(5, 0, 15, 10)) == 0.0);
  }
  SUBCASE("symmetry") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
      const Polygon a = random_rect(rng);
      const Polygon b = random_rect(rng);
      CHECK(gap_distance(a, b) == gap_distance(b, a));
    }
  }
}

TEST_CASE("merge polygons") {
  SUBCASE("idempotent on an identical square") {
    const Polygon square = rect_polygon(0, 0, 2, 2);
    const Polygon merged = merge_polygons(square, square);
    CHECK(merged.area() == Approx(4.0));
    CHECK(merged.size() == 4);
  }
  SUBCASE("side-by-side squares hull") {
    const Polygon merged = merge_polygons(rect_polygon(0, 0, 1, 1), rect_polygon(2, 0, 3, 1));
    CHECK(merged.area() == Approx(3.0));
    const BBox box = merged.bbox();
    CHECK(box.x_min == 0.0);
    CHECK(box.x_max == 3.0);
    CHECK(box.y_min == 0.0);
    CHECK(box.y_max == 1.0);
    CHECK(merged.size() == 4);
  }
  SUBCASE("collinear-only input collapses") {
    const Polygon line1({{0, 0}, {1, 0}, {2, 0}});
    const Polygon line2({{3, 0}, {4, 0}, {5, 0}});
    CHECK_THROWS_AS(merge_polygons(line1, line2), Error);
  }
  SUBCASE("hull contains every input vertex and dominates both areas") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
      const Polygon a = trial % 2 == 0 ? random_rect(rng) : random_convex(rng);
      const Polygon b = random_convex(rng);
      const Polygon merged = merge_polygons(a, b);
      for (const Point& p : a.vertices()) CHECK(merged.contains(p));
      for (const Point& p : b.vertices()) CHECK(merged.contains(p));
      CHECK(merged.area() >= a.area() - 1e-9);
      CHECK(merged.area() >= b.area() - 1e-9);
    }
  }
}
