#pragma once

#include <cstddef>
#include <vector>

#include "geoloc/neural/tensor.hpp"
#include "geoloc/rng.hpp"

namespace geoloc::neural {

// Valid-padding stride-1 convolution over [B x Cin x H x W] images.
class Conv2dLayer {
 public:
  Conv2dLayer() = default;
  Conv2dLayer(std::size_t in_channels, std::size_t out_channels, std::size_t kernel, Rng& rng);

  std::size_t in_channels() const { return in_channels_; }
  std::size_t out_channels() const { return out_channels_; }
  std::size_t kernel() const { return kernel_; }

  Tensor forward(const Tensor& x, Tensor& cache_x) const;
  Tensor backward(const Tensor& cache_x, const Tensor& dy);
  void zero_grads();

  Tensor K, b;    // [Cout x Cin x k x k], [Cout]
  Tensor dK, db;

 private:
  std::size_t in_channels_ = 0, out_channels_ = 0, kernel_ = 0;
};

// 2x2 max pooling with stride 2; odd trailing rows/columns are dropped.
class MaxPool2x2 {
 public:
  Tensor forward(const Tensor& x);
  Tensor backward(const Tensor& dy) const;

 private:
  std::vector<std::size_t> argmax_;  // flat input index per output element
  std::vector<std::size_t> in_shape_;
  std::vector<std::size_t> out_shape_;
};

class Relu {
 public:
  Tensor forward(const Tensor& x);
  Tensor backward(const Tensor& dy) const;

 private:
  Tensor mask_;
};

}  // namespace geoloc::neural
