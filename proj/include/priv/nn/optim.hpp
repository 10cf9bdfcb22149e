#pragma once

#include <cstdint>
#include <vector>

#include "priv/nn/matrix.hpp"

namespace priv::nn {

/// Bias-corrected Adam. Moment buffers are allocated lazily on the first
/// step and must keep matching the parameter shapes afterwards.
struct AdamState {
  std::size_t step = 0;
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::vector<Matrix> m;
  std::vector<Matrix> v;
};

// Updates params in place; grads are left untouched (the caller zeroes them).
// Throws NumericError naming the parameter index on non-finite input or output.
void adam_step(AdamState& state, const std::vector<Matrix*>& params,
               const std::vector<Matrix*>& grads);

// p <- p - lr * g
void sgd_step(const std::vector<Matrix*>& params, const std::vector<Matrix*>& grads,
              double lr);

}  // namespace priv::nn
