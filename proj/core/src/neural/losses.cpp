#include "geoloc/neural/losses.hpp"

#include <algorithm>
#include <cmath>

namespace geoloc::neural {

double mse(const Tensor& pred, const Tensor& target) {
  if (!pred.same_shape(target)) throw Error(ErrorKind::Shape, "mse: shape mismatch");
  if (pred.numel() == 0) throw Error(ErrorKind::Shape, "mse: empty tensors");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.numel(); ++i) {
    double d = pred[i] - target[i];
    acc += d * d;
  }
  return acc / static_cast<double>(pred.numel());
}

Tensor mse_backward(const Tensor& pred, const Tensor& target) {
  if (!pred.same_shape(target)) throw Error(ErrorKind::Shape, "mse backward: shape mismatch");
  Tensor d(pred.shape);
  const double scale = 2.0 / static_cast<double>(pred.numel());
  for (std::size_t i = 0; i < pred.numel(); ++i) d[i] = scale * (pred[i] - target[i]);
  return d;
}

SoftmaxCeResult softmax_cross_entropy(const Tensor& logits, const std::vector<std::size_t>& labels) {
  if (logits.shape.size() != 2) throw Error(ErrorKind::Shape, "softmax-ce: logits must be [B x K]");
  const std::size_t B = logits.dim(0), K = logits.dim(1);
  if (labels.size() != B) throw Error(ErrorKind::Shape, "softmax-ce: label count mismatch");
  SoftmaxCeResult r;
  r.probs = Tensor({B, K});
  for (std::size_t bi = 0; bi < B; ++bi) {
    if (labels[bi] >= K) throw Error(ErrorKind::Range, "softmax-ce: label out of range");
    const double* row = &logits.data[bi * K];
    double mx = *std::max_element(row, row + K);
    double sum = 0.0;
    for (std::size_t j = 0; j < K; ++j) sum += std::exp(row[j] - mx);
    double log_sum = std::log(sum);
    for (std::size_t j = 0; j < K; ++j) r.probs.data[bi * K + j] = std::exp(row[j] - mx) / sum;
    r.loss += -(row[labels[bi]] - mx - log_sum);
  }
  r.loss /= static_cast<double>(B);
  return r;
}

Tensor softmax_cross_entropy_backward(const SoftmaxCeResult& fwd,
                                      const std::vector<std::size_t>& labels) {
  const std::size_t B = fwd.probs.dim(0), K = fwd.probs.dim(1);
  if (labels.size() != B) throw Error(ErrorKind::Shape, "softmax-ce backward: label count mismatch");
  Tensor d(fwd.probs.shape);
  const double scale = 1.0 / static_cast<double>(B);
  for (std::size_t bi = 0; bi < B; ++bi)
    for (std::size_t j = 0; j < K; ++j)
      d.data[bi * K + j] = scale * (fwd.probs.data[bi * K + j] - (labels[bi] == j ? 1.0 : 0.0));
  return d;
}

}  // namespace geoloc::neural
