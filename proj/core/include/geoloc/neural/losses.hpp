#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "geoloc/neural/tensor.hpp"

namespace geoloc::neural {

// Mean squared error over every element (mean over batch, steps and
// features). Gradient is w.r.t. pred.
double mse(const Tensor& pred, const Tensor& target);
Tensor mse_backward(const Tensor& pred, const Tensor& target);

struct SoftmaxCeResult {
  double loss = 0.0;   // mean cross-entropy over the batch
  Tensor probs;        // [B x K], rows on the probability simplex
};

// Numerically stable fused softmax + cross-entropy on logits [B x K] with
// integer labels in [0, K).
SoftmaxCeResult softmax_cross_entropy(const Tensor& logits, const std::vector<std::size_t>& labels);
Tensor softmax_cross_entropy_backward(const SoftmaxCeResult& fwd,
                                      const std::vector<std::size_t>& labels);

}  // namespace geoloc::neural
