#include "priv/nn/vae.hpp"

#include <cmath>

#include "priv/errors.hpp"
#include "priv/nn/losses.hpp"
#include "priv/rng.hpp"

namespace priv::nn {

VaeModel VaeModel::make(std::size_t input_dim, std::size_t hidden_dim, std::size_t latent_dim,
                        std::uint64_t seed) {
  if (input_dim == 0 || hidden_dim == 0 || latent_dim == 0) {
    throw FormatError("vae dimensions must be positive");
  }
  VaeModel m{
      Network({{input_dim, hidden_dim, Activation::relu},
               {hidden_dim, 2 * latent_dim, Activation::identity}},
              counter_mix(seed, 0)),
      Network({{latent_dim, hidden_dim, Activation::relu},
               {hidden_dim, input_dim, Activation::identity}},
              counter_mix(seed, 1)),
      latent_dim};
  m.validate();
  return m;
}

void VaeModel::validate() const {
  if (latent_dim == 0) throw FormatError("vae latent_dim must be positive");
  if (encoder.out_dim() != 2 * latent_dim) {
    throw ShapeError("vae encoder must emit 2*latent_dim values (mu|log_var)");
  }
  if (decoder.in_dim() != latent_dim) {
    throw ShapeError("vae decoder input must match latent_dim");
  }
  if (decoder.out_dim() != encoder.in_dim()) {
    throw ShapeError("vae decoder output must match encoder input");
  }
}

namespace {

struct EncoderSplit {
  Matrix mu;
  Matrix log_var;
};

EncoderSplit split_encoding(const Matrix& enc_out, std::size_t latent) {
  EncoderSplit s{Matrix(enc_out.rows, latent), Matrix(enc_out.rows, latent)};
  for (std::size_t r = 0; r < enc_out.rows; ++r) {
    for (std::size_t c = 0; c < latent; ++c) {
      s.mu(r, c) = enc_out(r, c);
      s.log_var(r, c) = enc_out(r, latent + c);
    }
  }
  return s;
}

// KL(q(z|x) || N(0,I)) averaged over every latent coordinate in the batch.
double kl_mean(const Matrix& mu, const Matrix& log_var) {
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.data.size(); ++i) {
    const double m = mu.data[i];
    const double lv = log_var.data[i];
    sum += -0.5 * (1.0 + lv - m * m - std::exp(lv));
  }
  return sum / static_cast<double>(mu.data.size());
}

struct ForwardParts {
  EncoderSplit enc;
  Matrix z;
  Matrix recon;
  VaeLoss loss;
};

ForwardParts vae_forward(VaeModel& model, const Matrix& x, const Matrix& noise, double beta) {
  model.validate();
  if (x.cols != model.encoder.in_dim()) throw ShapeError("vae input width mismatch");
  if (noise.rows != x.rows || noise.cols != model.latent_dim) {
    throw ShapeError("vae noise must be batch x latent_dim");
  }
  ForwardParts p{split_encoding(model.encoder.forward(x), model.latent_dim), Matrix{}, Matrix{},
                 VaeLoss{}};
  p.z = Matrix(x.rows, model.latent_dim);
  for (std::size_t i = 0; i < p.z.data.size(); ++i) {
    p.z.data[i] = p.enc.mu.data[i] + std::exp(0.5 * p.enc.log_var.data[i]) * noise.data[i];
  }
  p.recon = model.decoder.forward(p.z);
  const LossResult mse = mse_loss(p.recon, x);
  p.loss.reconstruction = mse.value;
  p.loss.kl = kl_mean(p.enc.mu, p.enc.log_var);
  p.loss.total = p.loss.reconstruction + beta * p.loss.kl;
  return p;
}

}  // namespace

VaeLoss vae_loss_backward(VaeModel& model, const Matrix& x, const Matrix& noise, double beta) {
  ForwardParts p = vae_forward(model, x, noise, beta);
  const LossResult mse = mse_loss(p.recon, x);
  const Matrix dz = model.decoder.backward(mse.grad);

  const std::size_t latent = model.latent_dim;
  const double inv_m = 1.0 / static_cast<double>(p.enc.mu.data.size());
  Matrix enc_grad(x.rows, 2 * latent);
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < latent; ++c) {
      const double lv = p.enc.log_var(r, c);
      const double g = dz(r, c);
      // z = mu + exp(lv/2) * eps, plus the KL term's direct dependence.
      enc_grad(r, c) = g + beta * p.enc.mu(r, c) * inv_m;
      enc_grad(r, latent + c) =
          g * noise(r, c) * 0.5 * std::exp(0.5 * lv) + beta * 0.5 * (std::exp(lv) - 1.0) * inv_m;
    }
  }
  model.encoder.backward(enc_grad);
  return p.loss;
}

VaeLoss vae_loss_value(VaeModel& model, const Matrix& x, const Matrix& noise, double beta) {
  return vae_forward(model, x, noise, beta).loss;
}

Matrix encode_mean(VaeModel& model, const Matrix& x) {
  model.validate();
  return split_encoding(model.encoder.forward(x), model.latent_dim).mu;
}

Matrix reconstruct_mean(VaeModel& model, const Matrix& x) {
  return model.decoder.forward(encode_mean(model, x));
}

std::vector<double> reconstruction_errors(VaeModel& model, const Matrix& x) {
  const Matrix recon = reconstruct_mean(model, x);
  std::vector<double> errs(x.rows, 0.0);
  for (std::size_t r = 0; r < x.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double d = recon(r, c) - x(r, c);
      sum += d * d;
    }
    errs[r] = sum / static_cast<double>(x.cols);
  }
  return errs;
}

}  // namespace priv::nn
