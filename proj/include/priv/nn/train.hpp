#pragma once

#include <cstdint>
#include <vector>

#include "priv/nn/net.hpp"
#include "priv/nn/vae.hpp"

namespace priv::nn {

enum class Optimizer { adam, sgd };
enum class LossKind { bce, mse };

struct TrainConfig {
  std::size_t epochs = 10;
  std::size_t batch_size = 32;
  Optimizer opt = Optimizer::adam;
  double lr = 0.01;
  LossKind loss = LossKind::bce;
  std::uint64_t seed = 0;
};

// Minibatch training with a seeded per-epoch shuffle. Returns one value per
// epoch: the sample-weighted mean loss seen during that epoch. Repeated calls
// with equal inputs produce bit-identical parameters and history.
std::vector<double> train(Network& net, const Matrix& x, const Matrix& y, const TrainConfig& cfg);

// Same loop for the VAE; reparameterization noise comes from a stream seeded
// by cfg.seed so runs are replayable. History holds total loss per epoch.
std::vector<double> train_vae(VaeModel& model, const Matrix& x, const TrainConfig& cfg,
                              double beta = kDefaultVaeBeta);

// Fraction of rows where round(output) matches the 0/1 label. Requires a
// single output column.
double binary_accuracy(Network& net, const Matrix& x, const Matrix& y);

}  // namespace priv::nn
