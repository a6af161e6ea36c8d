#include "geoloc/neural/lstm.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace geoloc::neural {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Map = Eigen::Map<RowMat>;
using CMap = Eigen::Map<const RowMat>;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

LstmLayer::LstmLayer(std::size_t in_features, std::size_t hidden, Rng& rng)
    : in_features_(in_features), hidden_(hidden) {
  const std::size_t fan_in = in_features + hidden;
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  W = Tensor({4 * hidden, fan_in});
  for (auto& w : W.data) w = rng.uniform(-bound, bound);
  b = Tensor({4 * hidden});
  for (std::size_t i = hidden; i < 2 * hidden; ++i) b[i] = 1.0;  // forget gate
  dW = Tensor(W.shape);
  db = Tensor(b.shape);
  reset_state(1);
}

void LstmLayer::reset_state(std::size_t batch) {
  h_ = Tensor({batch, hidden_});
  c_ = Tensor({batch, hidden_});
}

void LstmLayer::set_state(Tensor h, Tensor c) {
  if (h.shape != c.shape || h.shape.size() != 2 || h.dim(1) != hidden_)
    throw Error(ErrorKind::Shape, "lstm state must be [batch x hidden]");
  h_ = std::move(h);
  c_ = std::move(c);
}

Tensor LstmLayer::forward(const Tensor& x, LstmCache& cache) {
  if (x.shape.size() != 3 || x.dim(2) != in_features_)
    throw Error(ErrorKind::Shape, "lstm forward: input must be [B x T x F]");
  const std::size_t B = x.dim(0), T = x.dim(1), F = in_features_, H = hidden_;
  if (h_.dim(0) != B) throw Error(ErrorKind::Shape, "lstm forward: state batch mismatch; call reset_state");

  cache = LstmCache{};
  cache.in_features = F;
  cache.hidden = H;
  cache.batch = B;
  cache.steps = T;
  cache.concat.reserve(T);
  cache.gate_i.reserve(T);
  cache.gate_f.reserve(T);
  cache.gate_g.reserve(T);
  cache.gate_o.reserve(T);
  cache.c_prev.reserve(T);
  cache.c.reserve(T);
  cache.tanh_c.reserve(T);

  Tensor y({B, T, H});
  CMap w(W.data.data(), 4 * H, F + H);

  Tensor z({B, 4 * H});
  for (std::size_t t = 0; t < T; ++t) {
    Tensor concat({B, F + H});
    for (std::size_t bi = 0; bi < B; ++bi) {
      const double* xin = &x.data[(bi * T + t) * F];
      double* row = &concat.data[bi * (F + H)];
      std::copy(xin, xin + F, row);
      std::copy(&h_.data[bi * H], &h_.data[bi * H] + H, row + F);
    }
    Map(z.data.data(), B, 4 * H).noalias() = CMap(concat.data.data(), B, F + H) * w.transpose();

    Tensor gi({B, H}), gf({B, H}), gg({B, H}), go({B, H}), cp = c_, cn({B, H}), tc({B, H});
    for (std::size_t bi = 0; bi < B; ++bi) {
      const double* zr = &z.data[bi * 4 * H];
      for (std::size_t j = 0; j < H; ++j) {
        double vi = sigmoid(zr[j] + b[j]);
        double vf = sigmoid(zr[H + j] + b[H + j]);
        double vg = std::tanh(zr[2 * H + j] + b[2 * H + j]);
        double vo = sigmoid(zr[3 * H + j] + b[3 * H + j]);
        double cnew = vf * cp.data[bi * H + j] + vi * vg;
        double th = std::tanh(cnew);
        gi.data[bi * H + j] = vi;
        gf.data[bi * H + j] = vf;
        gg.data[bi * H + j] = vg;
        go.data[bi * H + j] = vo;
        cn.data[bi * H + j] = cnew;
        tc.data[bi * H + j] = th;
        double hnew = vo * th;
        h_.data[bi * H + j] = hnew;
        y.data[(bi * T + t) * H + j] = hnew;
      }
    }
    c_ = cn;
    cache.concat.push_back(std::move(concat));
    cache.gate_i.push_back(std::move(gi));
    cache.gate_f.push_back(std::move(gf));
    cache.gate_g.push_back(std::move(gg));
    cache.gate_o.push_back(std::move(go));
    cache.c_prev.push_back(std::move(cp));
    cache.c.push_back(std::move(cn));
    cache.tanh_c.push_back(std::move(tc));
  }
  return y;
}

Tensor LstmLayer::backward(const LstmCache& cache, const Tensor& dy) {
  const std::size_t B = cache.batch, T = cache.steps, F = in_features_, H = hidden_;
  if (cache.in_features != F || cache.hidden != H || cache.concat.size() != T)
    throw Error(ErrorKind::Shape, "lstm backward: cache does not match this layer");
  if (dy.shape.size() != 3 || dy.dim(0) != B || dy.dim(1) != T || dy.dim(2) != H)
    throw Error(ErrorKind::Shape, "lstm backward: dy must be [B x T x H]");

  Tensor dx({B, T, F});
  Tensor dh({B, H}), dc({B, H});
  Tensor dz({B, 4 * H}), dconcat({B, F + H});
  CMap w(W.data.data(), 4 * H, F + H);
  Map dwm(dW.data.data(), 4 * H, F + H);

  for (std::size_t t = T; t-- > 0;) {
    const auto& gi = cache.gate_i[t];
    const auto& gf = cache.gate_f[t];
    const auto& gg = cache.gate_g[t];
    const auto& go = cache.gate_o[t];
    const auto& cp = cache.c_prev[t];
    const auto& tc = cache.tanh_c[t];
    for (std::size_t bi = 0; bi < B; ++bi) {
      for (std::size_t j = 0; j < H; ++j) {
        std::size_t k = bi * H + j;
        double dhv = dy.data[(bi * T + t) * H + j] + dh.data[k];
        double dov = dhv * tc.data[k];
        double dcv = dc.data[k] + dhv * go.data[k] * (1.0 - tc.data[k] * tc.data[k]);
        double div = dcv * gg.data[k];
        double dfv = dcv * cp.data[k];
        double dgv = dcv * gi.data[k];
        double* dzr = &dz.data[bi * 4 * H];
        dzr[j] = div * gi.data[k] * (1.0 - gi.data[k]);
        dzr[H + j] = dfv * gf.data[k] * (1.0 - gf.data[k]);
        dzr[2 * H + j] = dgv * (1.0 - gg.data[k] * gg.data[k]);
        dzr[3 * H + j] = dov * go.data[k] * (1.0 - go.data[k]);
        dc.data[k] = dcv * gf.data[k];
      }
    }
    CMap dzm(dz.data.data(), B, 4 * H);
    dwm.noalias() += dzm.transpose() * CMap(cache.concat[t].data.data(), B, F + H);
    for (std::size_t bi = 0; bi < B; ++bi)
      for (std::size_t j = 0; j < 4 * H; ++j) db.data[j] += dz.data[bi * 4 * H + j];
    Map(dconcat.data.data(), B, F + H).noalias() = dzm * w;
    for (std::size_t bi = 0; bi < B; ++bi) {
      const double* row = &dconcat.data[bi * (F + H)];
      std::copy(row, row + F, &dx.data[(bi * T + t) * F]);
      std::copy(row + F, row + F + H, &dh.data[bi * H]);
    }
  }
  return dx;
}

void LstmLayer::zero_grads() {
  dW.fill(0.0);
  db.fill(0.0);
}

}  // namespace geoloc::neural
