#pragma once

#include <array>
#include <cmath>

#include "geoloc/error.hpp"

namespace geoloc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  bool operator==(const Vec2&) const = default;
};

using Vec3 = std::array<double, 3>;

// Rectangular surveyed area hosting the reference grid. Origin is the
// lower-left corner; x spans [0, width_m], y spans [0, height_m].
struct TestBed {
  double width_m = 0.0;
  double height_m = 0.0;
  double spacing_m = 0.6;

  // Grid node counts along x / y (spacing must divide both extents).
  std::size_t nx() const { return static_cast<std::size_t>(std::llround(width_m / spacing_m)) + 1; }
  std::size_t ny() const { return static_cast<std::size_t>(std::llround(height_m / spacing_m)) + 1; }

  bool contains(Vec2 p, double tol = 0.0) const {
    return p.x >= -tol && p.x <= width_m + tol && p.y >= -tol && p.y <= height_m + tol;
  }

  void check() const {
    if (!(width_m > 0.0) || !(height_m > 0.0) || !(spacing_m > 0.0))
      throw Error(ErrorKind::Config, "test bed dimensions and spacing must be positive");
    auto multiple = [&](double extent) {
      double cells = extent / spacing_m;
      return std::abs(cells - std::llround(cells)) < 1e-9;
    };
    if (!multiple(width_m) || !multiple(height_m))
      throw Error(ErrorKind::Config, "bed extents must be integer multiples of the grid spacing");
  }
};

}  // namespace geoloc
