#pragma once

#include "geoloc/neural/tensor.hpp"
#include "geoloc/rng.hpp"

namespace geoloc::neural {

// Inverted dropout: surviving activations are scaled by 1/keep at training
// time so inference is the identity.
class Dropout {
 public:
  Dropout() = default;
  explicit Dropout(double rate);

  double rate() const { return rate_; }

  Tensor forward(const Tensor& x, bool training, Rng& rng);
  Tensor backward(const Tensor& dy) const;

 private:
  double rate_ = 0.0;
  Tensor mask_;  // 0 or 1/keep per element, from the last training forward
  bool identity_ = true;
};

}  // namespace geoloc::neural
