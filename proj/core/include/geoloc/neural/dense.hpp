#pragma once

#include <cstddef>

#include "geoloc/neural/tensor.hpp"
#include "geoloc/rng.hpp"

namespace geoloc::neural {

// Affine map y = x W^T + b. Rank-3 inputs [B x T x in] are treated
// time-distributed: the same map applies independently at every step.
class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(std::size_t in_features, std::size_t out_features, Rng& rng);

  std::size_t in_features() const { return in_features_; }
  std::size_t out_features() const { return out_features_; }

  Tensor forward(const Tensor& x, Tensor& cache_x) const;
  // dy -> dx; accumulates dW, db (sum over rows).
  Tensor backward(const Tensor& cache_x, const Tensor& dy);

  void zero_grads();

  Tensor W, b;    // [out x in], [out]
  Tensor dW, db;

 private:
  std::size_t in_features_ = 0, out_features_ = 0;
};

}  // namespace geoloc::neural
