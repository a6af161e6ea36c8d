#pragma once

#include <cstdint>
#include <vector>

#include "geoloc/neural/tensor.hpp"

namespace geoloc::neural {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// ADAM with bias correction:
//   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
//   theta <- theta - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
// Moments are zero-initialized and shape-matched to the parameter list on
// first step. Non-finite gradients abort loudly.
class Adam {
 public:
  Adam() = default;
  explicit Adam(AdamConfig cfg) : cfg_(cfg) {}

  const AdamConfig& config() const { return cfg_; }
  std::uint64_t steps_taken() const { return t_; }

  void step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads);

 private:
  AdamConfig cfg_;
  std::uint64_t t_ = 0;
  std::vector<Tensor> m_, v_;
};

}  // namespace geoloc::neural
