#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoloc/fingerprint.hpp"
#include "geoloc/geometry.hpp"

namespace geoloc {

// Per-node partial derivatives of the three field components:
// grad[c] = (d field_c / dx, d field_c / dy).
using NodeGradient = std::array<Vec2, 3>;

struct Raster {
  std::size_t nx = 0;  // columns (x)
  std::size_t ny = 0;  // rows (y)
  double pitch_m = 0.0;
  std::vector<Vec3> values;  // row-major, index = iy * nx + ix

  const Vec3& at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
};

// C1 piecewise-cubic interpolant of the 3-component geomagnetic field over a
// rectangular test bed. Grid nodes are triangulated with a fixed diagonal
// split (+x,+y); each macro triangle is split at its centroid into three
// cubic Bezier patches joined with C1 conditions (Clough-Tocher). The
// cross-edge derivative on macro edges varies linearly, which makes the
// composite C1 across neighbouring macro triangles that share vertex
// gradients.
class GeoMap {
 public:
  struct Triangle {
    std::array<std::size_t, 3> v;  // node indices, CCW
  };

  static GeoMap from_grid(const TestBed& bed, std::vector<Vec3> node_values,
                          std::optional<std::vector<NodeGradient>> node_gradients = {});

  const TestBed& bed() const { return bed_; }
  std::size_t node_count() const { return node_val_.size(); }
  Vec2 node_position(std::size_t i) const;
  const Vec3& node_value(std::size_t i) const { return node_val_[i]; }
  const NodeGradient& node_gradient(std::size_t i) const { return node_grad_[i]; }
  const std::vector<Triangle>& triangles() const { return tris_; }

  // Interpolant value at p (must lie inside the bed, boundary inclusive).
  Vec3 query(Vec2 p) const;

  // Value and Cartesian gradient of each component at p.
  void query_with_gradient(Vec2 p, Vec3& value, NodeGradient& gradient) const;

  // Row-major raster over the bed; pitch must be in (0, spacing].
  Raster rasterize(double pitch_m) const;

  // Verification hooks: evaluate one specific cubic patch as a polynomial
  // (no point location), so tests can compare adjacent patches on a shared
  // edge. micro k of a triangle spans (v[k], v[k+1], centroid).
  Vec3 value_in_patch(std::size_t tri, int micro, Vec2 p) const;
  NodeGradient gradient_in_patch(std::size_t tri, int micro, Vec2 p) const;

  void save(const std::string& path) const;
  static GeoMap load(const std::string& path);

 private:
  GeoMap() = default;
  void triangulate();
  void estimate_gradients();
  void build_patches();
  void locate(Vec2 p, std::size_t& tri, int& micro, double& u, double& v, double& w) const;

  TestBed bed_;
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<Vec3> node_val_;
  std::vector<NodeGradient> node_grad_;
  std::vector<Triangle> tris_;
  // 10 Bezier ordinates per micro triangle per component; see geomap.cpp for
  // the index order.
  std::vector<std::array<std::array<std::array<double, 10>, 3>, 3>> patches_;
};

struct GeoMapBuildOptions {
  std::optional<std::string> floor;        // restrict to one floor token
  std::optional<Direction> direction;      // restrict to one heading
};

// Average the selected records per grid node and interpolate. Every grid
// node of the bed must be covered by at least one record.
GeoMap build_geomap(const Database& db, const TestBed& bed, const GeoMapBuildOptions& opts = {});

}  // namespace geoloc
