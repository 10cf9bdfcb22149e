#pragma once

#include <cstdint>
#include <vector>

#include "priv/nn/net.hpp"

namespace priv::nn {

/// Variational autoencoder: encoder emits (mu, log_var) side by side, the
/// decoder maps a latent sample back to the input space.
struct VaeModel {
  Network encoder;
  Network decoder;
  std::size_t latent_dim = 0;

  static VaeModel make(std::size_t input_dim, std::size_t hidden_dim, std::size_t latent_dim,
                       std::uint64_t seed);
  void validate() const;
};

struct VaeLoss {
  double total = 0.0;
  double reconstruction = 0.0;
  double kl = 0.0;
};

inline constexpr double kDefaultVaeBeta = 0.1;

// Reparameterized loss; `noise` is a caller-supplied standard-normal sample of
// shape batch x latent_dim so runs are replayable. Accumulates gradients into
// both networks' buffers.
VaeLoss vae_loss_backward(VaeModel& model, const Matrix& x, const Matrix& noise,
                          double beta = kDefaultVaeBeta);

// Loss only, no gradient side effects (used by finite-difference checks).
VaeLoss vae_loss_value(VaeModel& model, const Matrix& x, const Matrix& noise,
                       double beta = kDefaultVaeBeta);

// Posterior mean, no sampling.
Matrix encode_mean(VaeModel& model, const Matrix& x);

// decode(encode_mean(x))
Matrix reconstruct_mean(VaeModel& model, const Matrix& x);

// Per-row MSE between x and its posterior-mean reconstruction.
std::vector<double> reconstruction_errors(VaeModel& model, const Matrix& x);

}  // namespace priv::nn
