#include "priv/nn/losses.hpp"

#include <algorithm>
#include <cmath>

#include "priv/errors.hpp"

namespace priv::nn {

LossResult bce_loss(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "bce_loss");
  const double n = static_cast<double>(pred.size());
  LossResult out;
  out.grad = Matrix(pred.rows, pred.cols);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double p = std::clamp(pred.data[i], kBceClamp, 1.0 - kBceClamp);
    double t = target.data[i];
    total += -(t * std::log(p) + (1.0 - t) * std::log(1.0 - p));
    out.grad.data[i] = (p - t) / (p * (1.0 - p)) / n;
  }
  out.value = total / n;
  return out;
}

LossResult mse_loss(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "mse_loss");
  const double n = static_cast<double>(pred.size());
  LossResult out;
  out.grad = Matrix(pred.rows, pred.cols);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double d = pred.data[i] - target.data[i];
    total += d * d;
    out.grad.data[i] = 2.0 * d / n;
  }
  out.value = total / n;
  return out;
}

}  // namespace priv::nn
