#pragma once

#include <cstdint>
#include <vector>

#include "priv/nn/matrix.hpp"

namespace priv::nn {

enum class Activation { identity, relu, sigmoid };

struct LayerSpec {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  Activation act = Activation::identity;
};

double sigmoid(double x);

/// Dense feed-forward network with reverse-mode gradients.
///
/// forward() caches per-layer inputs and pre-activations; backward() consumes
/// the cache, accumulates into the parameter gradient buffers, and returns the
/// gradient with respect to the network input (needed both for encoder chains
/// and for optimizing over inputs with frozen weights).
class Network {
 public:
  Network() = default;

  // Glorot-uniform init from the seeded stream; biases start at zero.
  Network(std::vector<LayerSpec> layers, std::uint64_t seed);

  Matrix forward(const Matrix& x);
  Matrix backward(const Matrix& output_grad);

  void zero_grads();

  std::size_t layer_count() const { return specs_.size(); }
  const std::vector<LayerSpec>& layers() const { return specs_; }
  std::size_t in_dim() const { return specs_.front().in_dim; }
  std::size_t out_dim() const { return specs_.back().out_dim; }

  Matrix& weight(std::size_t i) { return weights_[i]; }
  Matrix& bias(std::size_t i) { return biases_[i]; }
  const Matrix& weight(std::size_t i) const { return weights_[i]; }
  const Matrix& bias(std::size_t i) const { return biases_[i]; }
  const Matrix& weight_grad(std::size_t i) const { return wgrads_[i]; }
  const Matrix& bias_grad(std::size_t i) const { return bgrads_[i]; }

  // Parameter/gradient views in a fixed order: W0, b0, W1, b1, ...
  std::vector<Matrix*> params();
  std::vector<Matrix*> grads();

  std::size_t param_count() const;

  // FNV-1a over the raw parameter bytes; used to prove weights are untouched.
  std::uint64_t param_checksum() const;

 private:
  std::vector<LayerSpec> specs_;
  std::vector<Matrix> weights_, biases_;
  std::vector<Matrix> wgrads_, bgrads_;
  std::vector<Matrix> cached_inputs_;   // input to each layer
  std::vector<Matrix> cached_preacts_;  // z = x*W + b per layer
  bool has_cache_ = false;
};

}  // namespace priv::nn
