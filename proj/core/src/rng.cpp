#include "geoloc/rng.hpp"

#include <cmath>

#include "geoloc/error.hpp"

namespace geoloc {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::Config, "Rng::below(0)");
  std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

double Rng::gamma(double shape_k, double scale_theta) {
  if (!(shape_k > 0.0) || !(scale_theta > 0.0))
    throw Error(ErrorKind::Config, "gamma parameters must be positive");
  if (shape_k < 1.0) {
    double u = uniform();
    while (u == 0.0) u = uniform();
    return gamma(shape_k + 1.0, scale_theta) * std::pow(u, 1.0 / shape_k);
  }
  const double d = shape_k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale_theta;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v * scale_theta;
  }
}

}  // namespace geoloc
