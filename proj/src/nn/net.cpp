#include "priv/nn/net.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "priv/errors.hpp"
#include "priv/rng.hpp"

namespace priv::nn {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace {

double activate(Activation act, double z) {
  switch (act) {
    case Activation::identity: return z;
    case Activation::relu: return z > 0.0 ? z : 0.0;
    case Activation::sigmoid: return sigmoid(z);
  }
  return z;
}

// Derivative in terms of the pre-activation z.
double activate_grad(Activation act, double z) {
  switch (act) {
    case Activation::identity: return 1.0;
    case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
    case Activation::sigmoid: {
      double s = sigmoid(z);
      return s * (1.0 - s);
    }
  }
  return 1.0;
}

}  // namespace

Network::Network(std::vector<LayerSpec> layers, std::uint64_t seed) : specs_(std::move(layers)) {
  if (specs_.empty()) throw ShapeError("Network: no layers");
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].in_dim == 0 || specs_[i].out_dim == 0) {
      throw ShapeError("Network: zero layer dimension");
    }
    if (i > 0 && specs_[i].in_dim != specs_[i - 1].out_dim) {
      throw ShapeError("Network: layer " + std::to_string(i) + " in_dim " +
                       std::to_string(specs_[i].in_dim) + " != previous out_dim " +
                       std::to_string(specs_[i - 1].out_dim));
    }
  }
  Rng rng(seed);
  for (const LayerSpec& spec : specs_) {
    double bound = std::sqrt(6.0 / static_cast<double>(spec.in_dim + spec.out_dim));
    Matrix w(spec.in_dim, spec.out_dim);
    for (double& v : w.data) v = rng.uniform(-bound, bound);
    weights_.push_back(std::move(w));
    biases_.emplace_back(1, spec.out_dim);
    wgrads_.emplace_back(spec.in_dim, spec.out_dim);
    bgrads_.emplace_back(1, spec.out_dim);
  }
}

Matrix Network::forward(const Matrix& x) {
  if (x.cols != in_dim()) {
    throw ShapeError("forward: input cols " + std::to_string(x.cols) + " != in_dim " +
                     std::to_string(in_dim()));
  }
  cached_inputs_.clear();
  cached_preacts_.clear();
  Matrix a = x;
  for (std::size_t l = 0; l < specs_.size(); ++l) {
    cached_inputs_.push_back(a);
    Matrix z = add_row_broadcast(matmul(a, weights_[l]), biases_[l]);
    cached_preacts_.push_back(z);
    for (double& v : z.data) v = activate(specs_[l].act, v);
    a = std::move(z);
  }
  has_cache_ = true;
  return a;
}

Matrix Network::backward(const Matrix& output_grad) {
  if (!has_cache_) throw StateError("backward: no cached forward pass");
  if (output_grad.rows != cached_inputs_.front().rows || output_grad.cols != out_dim()) {
    throw ShapeError("backward: gradient shape mismatch");
  }
  Matrix grad = output_grad;
  for (std::size_t l = specs_.size(); l-- > 0;) {
    const Matrix& z = cached_preacts_[l];
    Matrix dz = grad;
    for (std::size_t i = 0; i < dz.size(); ++i) {
      dz.data[i] *= activate_grad(specs_[l].act, z.data[i]);
    }
    Matrix dw = matmul(transpose(cached_inputs_[l]), dz);
    Matrix db = column_sums(dz);
    for (std::size_t i = 0; i < dw.size(); ++i) wgrads_[l].data[i] += dw.data[i];
    for (std::size_t i = 0; i < db.size(); ++i) bgrads_[l].data[i] += db.data[i];
    grad = matmul(dz, transpose(weights_[l]));
  }
  return grad;
}

void Network::zero_grads() {
  for (Matrix& g : wgrads_) g.data.assign(g.size(), 0.0);
  for (Matrix& g : bgrads_) g.data.assign(g.size(), 0.0);
}

std::vector<Matrix*> Network::params() {
  std::vector<Matrix*> out;
  for (std::size_t l = 0; l < specs_.size(); ++l) {
    out.push_back(&weights_[l]);
    out.push_back(&biases_[l]);
  }
  return out;
}

std::vector<Matrix*> Network::grads() {
  std::vector<Matrix*> out;
  for (std::size_t l = 0; l < specs_.size(); ++l) {
    out.push_back(&wgrads_[l]);
    out.push_back(&bgrads_[l]);
  }
  return out;
}

std::size_t Network::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < specs_.size(); ++l) {
    n += weights_[l].size() + biases_[l].size();
  }
  return n;
}

std::uint64_t Network::param_checksum() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const Matrix& m) {
    for (double v : m.data) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      for (int shift = 0; shift < 64; shift += 8) {
        h ^= (bits >> shift) & 0xFF;
        h *= 0x100000001B3ULL;
      }
    }
  };
  for (std::size_t l = 0; l < specs_.size(); ++l) {
    mix(weights_[l]);
    mix(biases_[l]);
  }
  return h;
}

}  // namespace priv::nn
