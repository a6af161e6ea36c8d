#include "geoloc/neural/dense.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace geoloc::neural {

namespace {
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Map = Eigen::Map<RowMat>;
using CMap = Eigen::Map<const RowMat>;

std::size_t row_count(const Tensor& x, std::size_t in, const char* what) {
  if (x.shape.empty() || x.shape.back() != in)
    throw Error(ErrorKind::Shape, std::string(what) + ": trailing dimension mismatch");
  return x.numel() / in;
}
}  // namespace

DenseLayer::DenseLayer(std::size_t in_features, std::size_t out_features, Rng& rng)
    : in_features_(in_features), out_features_(out_features) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in_features));
  W = Tensor({out_features, in_features});
  for (auto& w : W.data) w = rng.uniform(-bound, bound);
  b = Tensor({out_features});
  dW = Tensor(W.shape);
  db = Tensor(b.shape);
}

Tensor DenseLayer::forward(const Tensor& x, Tensor& cache_x) const {
  const std::size_t rows = row_count(x, in_features_, "dense forward");
  auto out_shape = x.shape;
  out_shape.back() = out_features_;
  Tensor y(out_shape);
  Map(y.data.data(), rows, out_features_).noalias() =
      CMap(x.data.data(), rows, in_features_) * CMap(W.data.data(), out_features_, in_features_).transpose();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < out_features_; ++j) y.data[r * out_features_ + j] += b[j];
  cache_x = x;
  return y;
}

Tensor DenseLayer::backward(const Tensor& cache_x, const Tensor& dy) {
  const std::size_t rows = row_count(cache_x, in_features_, "dense backward");
  if (row_count(dy, out_features_, "dense backward dy") != rows)
    throw Error(ErrorKind::Shape, "dense backward: dy row count mismatch");
  Map(dW.data.data(), out_features_, in_features_).noalias() +=
      CMap(dy.data.data(), rows, out_features_).transpose() * CMap(cache_x.data.data(), rows, in_features_);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < out_features_; ++j) db[j] += dy.data[r * out_features_ + j];
  Tensor dx(cache_x.shape);
  Map(dx.data.data(), rows, in_features_).noalias() =
      CMap(dy.data.data(), rows, out_features_) * CMap(W.data.data(), out_features_, in_features_);
  return dx;
}

void DenseLayer::zero_grads() {
  dW.fill(0.0);
  db.fill(0.0);
}

}  // namespace geoloc::neural
