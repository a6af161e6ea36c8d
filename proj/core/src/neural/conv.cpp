#include "geoloc/neural/conv.hpp"

#include <cmath>

namespace geoloc::neural {

Conv2dLayer::Conv2dLayer(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
                         Rng& rng)
    : in_channels_(in_channels), out_channels_(out_channels), kernel_(kernel) {
  if (kernel % 2 == 0) throw Error(ErrorKind::Config, "conv kernel size must be odd");
  const double bound = 1.0 / std::sqrt(static_cast<double>(in_channels * kernel * kernel));
  K = Tensor({out_channels, in_channels, kernel, kernel});
  for (auto& w : K.data) w = rng.uniform(-bound, bound);
  b = Tensor({out_channels});
  dK = Tensor(K.shape);
  db = Tensor(b.shape);
}

Tensor Conv2dLayer::forward(const Tensor& x, Tensor& cache_x) const {
  if (x.shape.size() != 4 || x.dim(1) != in_channels_)
    throw Error(ErrorKind::Shape, "conv forward: input must be [B x Cin x H x W]");
  const std::size_t B = x.dim(0), H = x.dim(2), W = x.dim(3), k = kernel_;
  if (H < k || W < k) throw Error(ErrorKind::Shape, "conv forward: image smaller than kernel");
  const std::size_t Ho = H - k + 1, Wo = W - k + 1;
  Tensor y({B, out_channels_, Ho, Wo});
  for (std::size_t bi = 0; bi < B; ++bi) {
    for (std::size_t co = 0; co < out_channels_; ++co) {
      for (std::size_t oy = 0; oy < Ho; ++oy) {
        for (std::size_t ox = 0; ox < Wo; ++ox) {
          double acc = b[co];
          for (std::size_t ci = 0; ci < in_channels_; ++ci) {
            const double* img = &x.data[((bi * in_channels_ + ci) * H + oy) * W + ox];
            const double* ker = &K.data[((co * in_channels_ + ci) * k) * k];
            for (std::size_t ky = 0; ky < k; ++ky)
              for (std::size_t kx = 0; kx < k; ++kx) acc += img[ky * W + kx] * ker[ky * k + kx];
          }
          y.data[((bi * out_channels_ + co) * Ho + oy) * Wo + ox] = acc;
        }
      }
    }
  }
  cache_x = x;
  return y;
}

Tensor Conv2dLayer::backward(const Tensor& cache_x, const Tensor& dy) {
  const std::size_t B = cache_x.dim(0), H = cache_x.dim(2), W = cache_x.dim(3), k = kernel_;
  const std::size_t Ho = H - k + 1, Wo = W - k + 1;
  if (dy.shape.size() != 4 || dy.dim(0) != B || dy.dim(1) != out_channels_ || dy.dim(2) != Ho ||
      dy.dim(3) != Wo)
    throw Error(ErrorKind::Shape, "conv backward: dy shape mismatch");
  Tensor dx(cache_x.shape);
  for (std::size_t bi = 0; bi < B; ++bi) {
    for (std::size_t co = 0; co < out_channels_; ++co) {
      for (std::size_t oy = 0; oy < Ho; ++oy) {
        for (std::size_t ox = 0; ox < Wo; ++ox) {
          const double g = dy.data[((bi * out_channels_ + co) * Ho + oy) * Wo + ox];
          db[co] += g;
          for (std::size_t ci = 0; ci < in_channels_; ++ci) {
            const double* img = &cache_x.data[((bi * in_channels_ + ci) * H + oy) * W + ox];
            double* dimg = &dx.data[((bi * in_channels_ + ci) * H + oy) * W + ox];
            double* dker = &dK.data[((co * in_channels_ + ci) * k) * k];
            const double* ker = &K.data[((co * in_channels_ + ci) * k) * k];
            for (std::size_t ky = 0; ky < k; ++ky) {
              for (std::size_t kx = 0; kx < k; ++kx) {
                dker[ky * k + kx] += g * img[ky * W + kx];
                dimg[ky * W + kx] += g * ker[ky * k + kx];
              }
            }
          }
        }
      }
    }
  }
  return dx;
}

void Conv2dLayer::zero_grads() {
  dK.fill(0.0);
  db.fill(0.0);
}

Tensor MaxPool2x2::forward(const Tensor& x) {
  if (x.shape.size() != 4) throw Error(ErrorKind::Shape, "maxpool forward: input must be rank 4");
  const std::size_t B = x.dim(0), C = x.dim(1), H = x.dim(2), W = x.dim(3);
  if (H < 2 || W < 2) throw Error(ErrorKind::Shape, "maxpool forward: image smaller than 2x2");
  const std::size_t Ho = H / 2, Wo = W / 2;
  Tensor y({B, C, Ho, Wo});
  in_shape_ = x.shape;
  out_shape_ = y.shape;
  argmax_.assign(y.numel(), 0);
  for (std::size_t bc = 0; bc < B * C; ++bc) {
    const double* img = &x.data[bc * H * W];
    for (std::size_t oy = 0; oy < Ho; ++oy) {
      for (std::size_t ox = 0; ox < Wo; ++ox) {
        std::size_t base = (2 * oy) * W + 2 * ox;
        std::size_t best = base;
        for (std::size_t dy2 = 0; dy2 < 2; ++dy2)
          for (std::size_t dx2 = 0; dx2 < 2; ++dx2) {
            std::size_t idx = base + dy2 * W + dx2;
            if (img[idx] > img[best]) best = idx;
          }
        std::size_t oidx = bc * Ho * Wo + oy * Wo + ox;
        y.data[oidx] = img[best];
        argmax_[oidx] = bc * H * W + best;
      }
    }
  }
  return y;
}

Tensor MaxPool2x2::backward(const Tensor& dy) const {
  if (dy.shape != out_shape_)
    throw Error(ErrorKind::Shape, "maxpool backward: dy shape does not match last forward");
  Tensor dx(in_shape_);
  for (std::size_t i = 0; i < dy.numel(); ++i) dx[argmax_[i]] += dy[i];
  return dx;
}

Tensor Relu::forward(const Tensor& x) {
  mask_ = Tensor(x.shape);
  Tensor y(x.shape);
  for (std::size_t i = 0; i < x.numel(); ++i) {
    bool on = x[i] > 0.0;
    mask_[i] = on ? 1.0 : 0.0;
    y[i] = on ? x[i] : 0.0;
  }
  return y;
}

Tensor Relu::backward(const Tensor& dy) const {
  if (!dy.same_shape(mask_))
    throw Error(ErrorKind::Shape, "relu backward: dy shape does not match last forward");
  Tensor dx(dy.shape);
  for (std::size_t i = 0; i < dy.numel(); ++i) dx[i] = dy[i] * mask_[i];
  return dx;
}

}  // namespace geoloc::neural
