#include "priv/nn/train.hpp"

#include <cmath>

#include "priv/errors.hpp"
#include "priv/nn/losses.hpp"
#include "priv/nn/optim.hpp"
#include "priv/rng.hpp"

namespace priv::nn {

namespace {

void check_train_args(std::size_t rows, std::size_t batch_size, double lr) {
  if (rows == 0) throw FormatError("training set must be non-empty");
  if (batch_size == 0) throw FormatError("batch_size must be positive");
  if (!(lr > 0.0)) throw FormatError("learning rate must be positive");
}

Matrix take_rows(const Matrix& src, const std::vector<std::size_t>& order, std::size_t begin,
                 std::size_t end) {
  Matrix out(end - begin, src.cols);
  for (std::size_t i = begin; i < end; ++i) {
    for (std::size_t c = 0; c < src.cols; ++c) out(i - begin, c) = src(order[i], c);
  }
  return out;
}

struct Stepper {
  Optimizer opt;
  double lr;
  AdamState adam;

  void step(std::vector<Matrix*> params, std::vector<Matrix*> grads) {
    if (opt == Optimizer::adam) {
      adam_step(adam, params, grads);
    } else {
      sgd_step(params, grads, lr);
    }
  }
};

Stepper make_stepper(const TrainConfig& cfg) {
  Stepper s{cfg.opt, cfg.lr, AdamState{}};
  s.adam.lr = cfg.lr;
  return s;
}

}  // namespace

std::vector<double> train(Network& net, const Matrix& x, const Matrix& y, const TrainConfig& cfg) {
  if (x.rows != y.rows) throw ShapeError("features and labels must have equal row counts");
  check_train_args(x.rows, cfg.batch_size, cfg.lr);

  Rng rng(cfg.seed);
  Stepper stepper = make_stepper(cfg);
  std::vector<double> history;
  history.reserve(cfg.epochs);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const std::vector<std::size_t> order = rng.permutation(x.rows);
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < x.rows; begin += cfg.batch_size) {
      const std::size_t end = std::min(begin + cfg.batch_size, x.rows);
      const Matrix bx = take_rows(x, order, begin, end);
      const Matrix by = take_rows(y, order, begin, end);
      const Matrix out = net.forward(bx);
      const LossResult loss =
          cfg.loss == LossKind::bce ? bce_loss(out, by) : mse_loss(out, by);
      epoch_loss += loss.value * static_cast<double>(end - begin);
      net.zero_grads();
      net.backward(loss.grad);
      stepper.step(net.params(), net.grads());
    }
    history.push_back(epoch_loss / static_cast<double>(x.rows));
  }
  return history;
}

std::vector<double> train_vae(VaeModel& model, const Matrix& x, const TrainConfig& cfg,
                              double beta) {
  model.validate();
  check_train_args(x.rows, cfg.batch_size, cfg.lr);

  Rng rng(cfg.seed);
  Stepper enc_stepper = make_stepper(cfg);
  Stepper dec_stepper = make_stepper(cfg);
  std::vector<double> history;
  history.reserve(cfg.epochs);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const std::vector<std::size_t> order = rng.permutation(x.rows);
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < x.rows; begin += cfg.batch_size) {
      const std::size_t end = std::min(begin + cfg.batch_size, x.rows);
      const Matrix bx = take_rows(x, order, begin, end);
      Matrix noise(bx.rows, model.latent_dim);
      for (double& v : noise.data) v = rng.normal();
      model.encoder.zero_grads();
      model.decoder.zero_grads();
      const VaeLoss loss = vae_loss_backward(model, bx, noise, beta);
      epoch_loss += loss.total * static_cast<double>(end - begin);
      enc_stepper.step(model.encoder.params(), model.encoder.grads());
      dec_stepper.step(model.decoder.params(), model.decoder.grads());
    }
    history.push_back(epoch_loss / static_cast<double>(x.rows));
  }
  return history;
}

double binary_accuracy(Network& net, const Matrix& x, const Matrix& y) {
  if (y.cols != 1) throw ShapeError("binary_accuracy expects one label column");
  if (x.rows != y.rows) throw ShapeError("features and labels must have equal row counts");
  if (x.rows == 0) throw FormatError("binary_accuracy needs at least one row");
  const Matrix out = net.forward(x);
  if (out.cols != 1) throw ShapeError("binary_accuracy expects one output column");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < x.rows; ++r) {
    const double pred = out(r, 0) >= 0.5 ? 1.0 : 0.0;
    if (pred == y(r, 0)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(x.rows);
}

}  // namespace priv::nn
