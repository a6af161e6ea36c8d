#pragma once

#include <cstddef>
#include <vector>

#include "geoloc/neural/tensor.hpp"
#include "geoloc/rng.hpp"

namespace geoloc::neural {

// Per-call activations kept for backprop through the window.
struct LstmCache {
  std::size_t in_features = 0, hidden = 0, batch = 0, steps = 0;
  std::vector<Tensor> concat;  // per step [B x (F+H)], input next to previous h
  std::vector<Tensor> gate_i, gate_f, gate_g, gate_o;  // per step [B x H]
  std::vector<Tensor> c_prev, c, tanh_c;               // per step [B x H]
};

// Single LSTM layer, batch-first, stateful across forward calls.
//
// Weights W: [4H x (F+H)] with gate row blocks in the fixed order
// i, f, g, o (input, forget, cell, output); b: [4H]. Gate equations:
//   i,f,o = sigmoid(.)   g = tanh(.)
//   c' = f*c + i*g       h' = o * tanh(c')
// Gradients accumulate into dW/db (sum over batch); zero_grads() clears.
class LstmLayer {
 public:
  LstmLayer() = default;
  LstmLayer(std::size_t in_features, std::size_t hidden, Rng& rng);

  std::size_t in_features() const { return in_features_; }
  std::size_t hidden() const { return hidden_; }

  // Drops the carried state and re-allocates zero (h, c) for `batch` lanes.
  void reset_state(std::size_t batch);

  const Tensor& state_h() const { return h_; }
  const Tensor& state_c() const { return c_; }
  void set_state(Tensor h, Tensor c);

  // x: [B x T x F] -> y: [B x T x H]. Starts from the carried (h, c) and
  // leaves the final step's state carried for the next call.
  Tensor forward(const Tensor& x, LstmCache& cache);

  // dy: [B x T x H] -> dx: [B x T x F]; accumulates dW, db. The cache must
  // come from the matching forward on this layer.
  Tensor backward(const LstmCache& cache, const Tensor& dy);

  void zero_grads();

  Tensor W, b;    // parameters
  Tensor dW, db;  // matching gradient store

 private:
  std::size_t in_features_ = 0, hidden_ = 0;
  Tensor h_, c_;  // carried state, [batch x H]
};

}  // namespace geoloc::neural
