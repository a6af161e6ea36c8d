#include "geoloc/neural/dropout.hpp"

namespace geoloc::neural {

Dropout::Dropout(double rate) : rate_(rate) {
  if (rate < 0.0 || rate >= 1.0)
    throw Error(ErrorKind::Config, "dropout rate must be in [0, 1)");
}

Tensor Dropout::forward(const Tensor& x, bool training, Rng& rng) {
  if (!training || rate_ == 0.0) {
    identity_ = true;
    return x;
  }
  identity_ = false;
  const double keep = 1.0 - rate_;
  const double scale = 1.0 / keep;
  mask_ = Tensor(x.shape);
  Tensor y(x.shape);
  for (std::size_t i = 0; i < x.numel(); ++i) {
    double m = rng.bernoulli(keep) ? scale : 0.0;
    mask_[i] = m;
    y[i] = x[i] * m;
  }
  return y;
}

Tensor Dropout::backward(const Tensor& dy) const {
  if (identity_) return dy;
  if (!dy.same_shape(mask_))
    throw Error(ErrorKind::Shape, "dropout backward: dy shape does not match last forward");
  Tensor dx(dy.shape);
  for (std::size_t i = 0; i < dy.numel(); ++i) dx[i] = dy[i] * mask_[i];
  return dx;
}

}  // namespace geoloc::neural
