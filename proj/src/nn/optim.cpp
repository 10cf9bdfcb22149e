#include "priv/nn/optim.hpp"

#include <cmath>
#include <string>

#include "priv/errors.hpp"

namespace priv::nn {

namespace {

void require_finite(const Matrix& g, std::size_t param_index, const char* what) {
  if (!all_finite(g)) {
    throw NumericError(std::string(what) + ": non-finite value in parameter " +
                       std::to_string(param_index));
  }
}

}  // namespace

void adam_step(AdamState& state, const std::vector<Matrix*>& params,
               const std::vector<Matrix*>& grads) {
  if (params.size() != grads.size()) throw ShapeError("adam_step: params/grads count mismatch");
  if (state.m.empty()) {
    for (const Matrix* p : params) {
      state.m.emplace_back(p->rows, p->cols);
      state.v.emplace_back(p->rows, p->cols);
    }
  }
  if (state.m.size() != params.size()) throw ShapeError("adam_step: state size mismatch");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));

  for (std::size_t k = 0; k < params.size(); ++k) {
    Matrix& p = *params[k];
    const Matrix& g = *grads[k];
    require_same_shape(p, g, "adam_step");
    require_same_shape(p, state.m[k], "adam_step moments");
    require_finite(g, k, "adam_step grad");
    for (std::size_t i = 0; i < p.size(); ++i) {
      double gi = g.data[i];
      double& mi = state.m[k].data[i];
      double& vi = state.v[k].data[i];
      mi = state.beta1 * mi + (1.0 - state.beta1) * gi;
      vi = state.beta2 * vi + (1.0 - state.beta2) * gi * gi;
      double mhat = mi / bc1;
      double vhat = vi / bc2;
      p.data[i] -= state.lr * mhat / (std::sqrt(vhat) + state.epsilon);
    }
    require_finite(p, k, "adam_step param");
  }
}

void sgd_step(const std::vector<Matrix*>& params, const std::vector<Matrix*>& grads,
              double lr) {
  if (lr <= 0.0) throw FormatError("sgd_step: lr must be positive");
  if (params.size() != grads.size()) throw ShapeError("sgd_step: params/grads count mismatch");
  for (std::size_t k = 0; k < params.size(); ++k) {
    Matrix& p = *params[k];
    const Matrix& g = *grads[k];
    require_same_shape(p, g, "sgd_step");
    require_finite(g, k, "sgd_step grad");
    for (std::size_t i = 0; i < p.size(); ++i) {
      p.data[i] -= lr * g.data[i];
    }
    require_finite(p, k, "sgd_step param");
  }
}

}  // namespace priv::nn
