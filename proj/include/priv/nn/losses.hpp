#pragma once

#include "priv/nn/matrix.hpp"

namespace priv::nn {

struct LossResult {
  double value = 0.0;
  Matrix grad;  // d value / d pred, same shape as pred
};

// Mean binary cross-entropy. Predictions are clamped into
// (kBceClamp, 1 - kBceClamp) before the log terms.
inline constexpr double kBceClamp = 1e-7;
LossResult bce_loss(const Matrix& pred, const Matrix& target);

// Mean squared error over all elements.
LossResult mse_loss(const Matrix& pred, const Matrix& target);

}  // namespace priv::nn
