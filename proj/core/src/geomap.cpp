#include "geoloc/geomap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "geoloc/binio.hpp"

namespace geoloc {

// Bezier ordinate order per micro triangle with barycentric indices (i,j,l)
// over (first vertex, second vertex, centroid):
//   0:b300 1:b210 2:b120 3:b030 4:b201 5:b111 6:b021 7:b102 8:b012 9:b003
namespace {

enum { B300, B210, B120, B030, B201, B111, B021, B102, B012, B003 };

struct BaryFrame {
  // Gradients of the three barycentric coordinate functions.
  Vec2 gu, gv, gw;
};

BaryFrame bary_frame(Vec2 p0, Vec2 p1, Vec2 p2) {
  Vec2 e1 = p1 - p0, e2 = p2 - p0;
  double det = e1.x * e2.y - e1.y * e2.x;
  BaryFrame f;
  f.gv = {e2.y / det, -e2.x / det};
  f.gw = {-e1.y / det, e1.x / det};
  f.gu = {-f.gv.x - f.gw.x, -f.gv.y - f.gw.y};
  return f;
}

void barycentric(Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p, double& u, double& v, double& w) {
  Vec2 e1 = p1 - p0, e2 = p2 - p0, d = p - p0;
  double det = e1.x * e2.y - e1.y * e2.x;
  v = (d.x * e2.y - d.y * e2.x) / det;
  w = (e1.x * d.y - e1.y * d.x) / det;
  u = 1.0 - v - w;
}

double eval_cubic(const std::array<double, 10>& b, double u, double v, double w) {
  return b[B300] * u * u * u + b[B030] * v * v * v + b[B003] * w * w * w +
         3.0 * (b[B210] * u * u * v + b[B201] * u * u * w + b[B120] * u * v * v +
                b[B021] * v * v * w + b[B102] * u * w * w + b[B012] * v * w * w) +
         6.0 * b[B111] * u * v * w;
}

// Directional derivative for barycentric direction (du, dv, dw).
double eval_cubic_deriv(const std::array<double, 10>& b, double u, double v, double w,
                        double du, double dv, double dw) {
  double c200 = du * b[B300] + dv * b[B210] + dw * b[B201];
  double c020 = du * b[B120] + dv * b[B030] + dw * b[B021];
  double c002 = du * b[B102] + dv * b[B012] + dw * b[B003];
  double c110 = du * b[B210] + dv * b[B120] + dw * b[B111];
  double c101 = du * b[B201] + dv * b[B111] + dw * b[B102];
  double c011 = du * b[B111] + dv * b[B021] + dw * b[B012];
  return 3.0 * (u * u * c200 + v * v * c020 + w * w * c002 +
                2.0 * (u * v * c110 + u * w * c101 + v * w * c011));
}

constexpr std::uint32_t kMapVersion = 1;
constexpr char kMapMagic[4] = {'G', 'M', 'A', 'P'};

}  // namespace

Vec2 GeoMap::node_position(std::size_t i) const {
  std::size_t iy = i / nx_, ix = i % nx_;
  return {static_cast<double>(ix) * bed_.spacing_m, static_cast<double>(iy) * bed_.spacing_m};
}

GeoMap GeoMap::from_grid(const TestBed& bed, std::vector<Vec3> node_values,
                         std::optional<std::vector<NodeGradient>> node_gradients) {
  bed.check();
  GeoMap m;
  m.bed_ = bed;
  m.nx_ = bed.nx();
  m.ny_ = bed.ny();
  if (node_values.size() != m.nx_ * m.ny_)
    throw Error(ErrorKind::Shape, "node value count " + std::to_string(node_values.size()) +
                                      " does not match grid " + std::to_string(m.nx_) + "x" +
                                      std::to_string(m.ny_));
  for (const auto& v : node_values)
    for (double c : v)
      if (!std::isfinite(c)) throw Error(ErrorKind::Numeric, "non-finite node value");
  m.node_val_ = std::move(node_values);
  if (node_gradients) {
    if (node_gradients->size() != m.node_val_.size())
      throw Error(ErrorKind::Shape, "node gradient count does not match node count");
    m.node_grad_ = std::move(*node_gradients);
  } else {
    m.estimate_gradients();
  }
  m.triangulate();
  m.build_patches();
  return m;
}

void GeoMap::estimate_gradients() {
  // Central differences on the regular grid, one-sided at the boundary.
  // Exact for linear fields, so the interpolant keeps linear precision.
  const double h = bed_.spacing_m;
  node_grad_.assign(node_val_.size(), NodeGradient{});
  auto val = [&](std::size_t ix, std::size_t iy, int c) { return node_val_[iy * nx_ + ix][c]; };
  for (std::size_t iy = 0; iy < ny_; ++iy) {
    for (std::size_t ix = 0; ix < nx_; ++ix) {
      for (int c = 0; c < 3; ++c) {
        double dx, dy;
        if (nx_ == 1)
          dx = 0.0;
        else if (ix == 0)
          dx = (val(1, iy, c) - val(0, iy, c)) / h;
        else if (ix == nx_ - 1)
          dx = (val(nx_ - 1, iy, c) - val(nx_ - 2, iy, c)) / h;
        else
          dx = (val(ix + 1, iy, c) - val(ix - 1, iy, c)) / (2.0 * h);
        if (ny_ == 1)
          dy = 0.0;
        else if (iy == 0)
          dy = (val(ix, 1, c) - val(ix, 0, c)) / h;
        else if (iy == ny_ - 1)
          dy = (val(ix, ny_ - 1, c) - val(ix, ny_ - 2, c)) / h;
        else
          dy = (val(ix, iy + 1, c) - val(ix, iy - 1, c)) / (2.0 * h);
        node_grad_[iy * nx_ + ix][c] = {dx, dy};
      }
    }
  }
}

void GeoMap::triangulate() {
  // Fixed (+x,+y) diagonal split of every grid cell, CCW orientation:
  // lower (A,B,C) and upper (A,C,D) for A=(ix,iy), B=(ix+1,iy),
  // C=(ix+1,iy+1), D=(ix,iy+1).
  if (nx_ < 2 || ny_ < 2)
    throw Error(ErrorKind::Config, "grid must be at least 2x2 nodes to triangulate");
  tris_.clear();
  tris_.reserve(2 * (nx_ - 1) * (ny_ - 1));
  for (std::size_t iy = 0; iy + 1 < ny_; ++iy) {
    for (std::size_t ix = 0; ix + 1 < nx_; ++ix) {
      std::size_t a = iy * nx_ + ix, b = a + 1, c = a + 1 + nx_, d = a + nx_;
      tris_.push_back({{a, b, c}});
      tris_.push_back({{a, c, d}});
    }
  }
}

void GeoMap::build_patches() {
  patches_.assign(tris_.size(), {});
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    const auto& tri = tris_[t];
    Vec2 P[3] = {node_position(tri.v[0]), node_position(tri.v[1]), node_position(tri.v[2])};
    Vec2 centroid = (P[0] + P[1] + P[2]) * (1.0 / 3.0);
    for (int c = 0; c < 3; ++c) {
      double f[3];
      Vec2 g[3];
      for (int k = 0; k < 3; ++k) {
        f[k] = node_val_[tri.v[k]][c];
        g[k] = node_grad_[tri.v[k]][c];
      }
      std::array<std::array<double, 10>, 3>& micro = patches_[t][c];
      // Corner and ring-1 ordinates from the vertex data.
      for (int k = 0; k < 3; ++k) {
        int k1 = (k + 1) % 3;
        auto& b = micro[k];
        b[B300] = f[k];
        b[B030] = f[k1];
        b[B210] = f[k] + g[k].dot(P[k1] - P[k]) / 3.0;
        b[B120] = f[k1] + g[k1].dot(P[k] - P[k1]) / 3.0;
        b[B201] = f[k] + g[k].dot(centroid - P[k]) / 3.0;
        b[B021] = f[k1] + g[k1].dot(centroid - P[k1]) / 3.0;
      }
      // b111 per micro: cross-edge derivative along the exterior edge varies
      // linearly. The direction is the edge normal keyed by sorted node
      // indices so both triangles sharing the edge use the identical vector.
      for (int k = 0; k < 3; ++k) {
        int k1 = (k + 1) % 3;
        auto& b = micro[k];
        std::size_t na = tri.v[k], nb = tri.v[k1];
        Vec2 lo = node_position(std::min(na, nb)), hi = node_position(std::max(na, nb));
        Vec2 edge = hi - lo;
        Vec2 n{-edge.y, edge.x};
        BaryFrame fr = bary_frame(P[k], P[k1], centroid);
        double du = fr.gu.dot(n), dv = fr.gv.dot(n), dw = fr.gw.dot(n);
        double q0 = du * b[B300] + dv * b[B210] + dw * b[B201];
        double q2 = du * b[B120] + dv * b[B030] + dw * b[B021];
        b[B111] = (0.5 * (q0 + q2) - du * b[B210] - dv * b[B120]) / dw;
      }
      // Inner ring and center from the C1 conditions across interior edges.
      // rho[k] is the ordinate adjacent to the centroid on edge (V_k, centroid).
      double rho[3];
      for (int k = 0; k < 3; ++k) {
        int km1 = (k + 2) % 3;
        rho[k] = (micro[km1][B111] + micro[k][B111] + micro[km1][B021]) / 3.0;
      }
      double s = (rho[0] + rho[1] + rho[2]) / 3.0;
      for (int k = 0; k < 3; ++k) {
        int k1 = (k + 1) % 3;
        micro[k][B102] = rho[k];
        micro[k][B012] = rho[k1];
        micro[k][B003] = s;
      }
    }
  }
}

void GeoMap::locate(Vec2 p, std::size_t& tri, int& micro, double& u, double& v, double& w) const {
  if (!bed_.contains(p, 1e-9))
    throw Error(ErrorKind::Domain, "point (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                                       ") outside test bed");
  p.x = std::clamp(p.x, 0.0, bed_.width_m);
  p.y = std::clamp(p.y, 0.0, bed_.height_m);
  const double h = bed_.spacing_m;
  auto cell = [h](double coord, std::size_t n) {
    auto i = static_cast<std::size_t>(std::max(0.0, std::floor(coord / h)));
    return std::min(i, n - 2);
  };
  std::size_t ix = cell(p.x, nx_), iy = cell(p.y, ny_);
  double fx = p.x / h - static_cast<double>(ix), fy = p.y / h - static_cast<double>(iy);
  tri = 2 * (iy * (nx_ - 1) + ix) + (fy <= fx ? 0 : 1);

  const auto& tr = tris_[tri];
  Vec2 P[3] = {node_position(tr.v[0]), node_position(tr.v[1]), node_position(tr.v[2])};
  double bary[3];
  barycentric(P[0], P[1], P[2], p, bary[0], bary[1], bary[2]);
  // Micro k spans (V_k, V_k+1, centroid) and owns the region where the
  // opposite coordinate bary[k+2] is smallest.
  int m = 0;
  for (int i = 1; i < 3; ++i)
    if (bary[i] < bary[m]) m = i;
  micro = (m + 1) % 3;
  int k1 = (micro + 1) % 3, k2 = (micro + 2) % 3;
  w = 3.0 * bary[k2];
  u = bary[micro] - bary[k2];
  v = bary[k1] - bary[k2];
}

Vec3 GeoMap::query(Vec2 p) const {
  std::size_t t;
  int m;
  double u, v, w;
  locate(p, t, m, u, v, w);
  Vec3 out;
  for (int c = 0; c < 3; ++c) out[c] = eval_cubic(patches_[t][c][m], u, v, w);
  return out;
}

void GeoMap::query_with_gradient(Vec2 p, Vec3& value, NodeGradient& gradient) const {
  std::size_t t;
  int m;
  double u, v, w;
  locate(p, t, m, u, v, w);
  const auto& tr = tris_[t];
  Vec2 P[3] = {node_position(tr.v[0]), node_position(tr.v[1]), node_position(tr.v[2])};
  Vec2 centroid = (P[0] + P[1] + P[2]) * (1.0 / 3.0);
  int k1 = (m + 1) % 3;
  BaryFrame fr = bary_frame(P[m], P[k1], centroid);
  for (int c = 0; c < 3; ++c) {
    const auto& b = patches_[t][c][m];
    value[c] = eval_cubic(b, u, v, w);
    gradient[c] = {eval_cubic_deriv(b, u, v, w, fr.gu.x, fr.gv.x, fr.gw.x),
                   eval_cubic_deriv(b, u, v, w, fr.gu.y, fr.gv.y, fr.gw.y)};
  }
}

Vec3 GeoMap::value_in_patch(std::size_t tri, int micro, Vec2 p) const {
  const auto& tr = tris_.at(tri);
  Vec2 P[3] = {node_position(tr.v[0]), node_position(tr.v[1]), node_position(tr.v[2])};
  Vec2 centroid = (P[0] + P[1] + P[2]) * (1.0 / 3.0);
  int k1 = (micro + 1) % 3;
  double u, v, w;
  barycentric(P[micro], P[k1], centroid, p, u, v, w);
  Vec3 out;
  for (int c = 0; c < 3; ++c) out[c] = eval_cubic(patches_[tri][c][micro], u, v, w);
  return out;
}

NodeGradient GeoMap::gradient_in_patch(std::size_t tri, int micro, Vec2 p) const {
  const auto& tr = tris_.at(tri);
  Vec2 P[3] = {node_position(tr.v[0]), node_position(tr.v[1]), node_position(tr.v[2])};
  Vec2 centroid = (P[0] + P[1] + P[2]) * (1.0 / 3.0);
  int k1 = (micro + 1) % 3;
  double u, v, w;
  barycentric(P[micro], P[k1], centroid, p, u, v, w);
  BaryFrame fr = bary_frame(P[micro], P[k1], centroid);
  NodeGradient out;
  for (int c = 0; c < 3; ++c) {
    const auto& b = patches_[tri][c][micro];
    out[c] = {eval_cubic_deriv(b, u, v, w, fr.gu.x, fr.gv.x, fr.gw.x),
              eval_cubic_deriv(b, u, v, w, fr.gu.y, fr.gv.y, fr.gw.y)};
  }
  return out;
}

Raster GeoMap::rasterize(double pitch_m) const {
  if (!(pitch_m > 0.0)) throw Error(ErrorKind::Config, "raster pitch must be positive");
  if (pitch_m > bed_.spacing_m + 1e-12)
    throw Error(ErrorKind::Config, "raster pitch must not exceed the grid spacing");
  Raster r;
  r.pitch_m = pitch_m;
  r.nx = static_cast<std::size_t>(std::llround(bed_.width_m / pitch_m)) + 1;
  r.ny = static_cast<std::size_t>(std::llround(bed_.height_m / pitch_m)) + 1;
  r.values.reserve(r.nx * r.ny);
  for (std::size_t iy = 0; iy < r.ny; ++iy) {
    double y = std::min(static_cast<double>(iy) * pitch_m, bed_.height_m);
    for (std::size_t ix = 0; ix < r.nx; ++ix) {
      double x = std::min(static_cast<double>(ix) * pitch_m, bed_.width_m);
      r.values.push_back(query({x, y}));
    }
  }
  return r;
}

void GeoMap::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out.write(kMapMagic, 4);
  binio::write_u32(out, kMapVersion);
  binio::write_f64(out, bed_.width_m);
  binio::write_f64(out, bed_.height_m);
  binio::write_f64(out, bed_.spacing_m);
  binio::write_u64(out, nx_);
  binio::write_u64(out, ny_);
  for (const auto& v : node_val_)
    for (double c : v) binio::write_f64(out, c);
  for (const auto& g : node_grad_)
    for (const auto& d : g) {
      binio::write_f64(out, d.x);
      binio::write_f64(out, d.y);
    }
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path + "'");
}

GeoMap GeoMap::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMapMagic, 4) != 0)
    throw Error(ErrorKind::Io, "'" + path + "' is not a map file");
  if (binio::read_u32(in) != kMapVersion)
    throw Error(ErrorKind::Io, "unsupported map file version");
  TestBed bed;
  bed.width_m = binio::read_f64(in);
  bed.height_m = binio::read_f64(in);
  bed.spacing_m = binio::read_f64(in);
  std::size_t nx = binio::read_u64(in), ny = binio::read_u64(in);
  std::vector<Vec3> vals(nx * ny);
  for (auto& v : vals)
    for (double& c : v) c = binio::read_f64(in);
  std::vector<NodeGradient> grads(nx * ny);
  for (auto& g : grads)
    for (auto& d : g) {
      d.x = binio::read_f64(in);
      d.y = binio::read_f64(in);
    }
  if (!in) throw Error(ErrorKind::Io, "truncated map file '" + path + "'");
  return from_grid(bed, std::move(vals), std::move(grads));
}

GeoMap build_geomap(const Database& db, const TestBed& bed, const GeoMapBuildOptions& opts) {
  bed.check();
  const std::size_t nx = bed.nx(), ny = bed.ny();
  std::vector<Vec3> sum(nx * ny, Vec3{});
  std::vector<std::size_t> count(nx * ny, 0);
  for (const auto& rec : db.records) {
    if (opts.floor && rec.floor != *opts.floor) continue;
    if (opts.direction && rec.direction != *opts.direction) continue;
    if (rec.loc_x < 0 || rec.loc_y < 0 || static_cast<std::size_t>(rec.loc_x) >= nx ||
        static_cast<std::size_t>(rec.loc_y) >= ny)
      throw Error(ErrorKind::Range, "record at grid (" + std::to_string(rec.loc_x) + "," +
                                        std::to_string(rec.loc_y) + ") outside the bed grid");
    std::size_t i = static_cast<std::size_t>(rec.loc_y) * nx + static_cast<std::size_t>(rec.loc_x);
    for (int c = 0; c < 3; ++c) sum[i][c] += rec.geo[c];
    ++count[i];
  }
  std::string missing;
  std::size_t n_missing = 0;
  for (std::size_t i = 0; i < count.size(); ++i) {
    if (count[i] == 0) {
      if (n_missing < 8) {
        missing += (n_missing ? ", " : "") + std::string("(") + std::to_string(i % nx) + "," +
                   std::to_string(i / nx) + ")";
      }
      ++n_missing;
    }
  }
  if (n_missing > 0)
    throw Error(ErrorKind::Range, std::to_string(n_missing) + " grid nodes have no records: " +
                                      missing + (n_missing > 8 ? ", ..." : ""));
  std::vector<Vec3> avg(nx * ny);
  for (std::size_t i = 0; i < avg.size(); ++i)
    for (int c = 0; c < 3; ++c) avg[i][c] = sum[i][c] / static_cast<double>(count[i]);
  return GeoMap::from_grid(bed, std::move(avg));
}

}  // namespace geoloc
