#pragma once

#include <cstdint>
#include <vector>

#include "priv/attacks/report.hpp"
#include "priv/nn/net.hpp"
#include "priv/nn/train.hpp"
#include "priv/synth/synthdata.hpp"

namespace priv::attacks {

struct MiaConfig {
  std::size_t latent_dim = 2;
  std::size_t hidden_dim = 8;
  std::size_t epochs = 2000;
  double threshold_percentile = 95.0;
  std::uint64_t seed = 0;
  std::size_t batch_size = 16;
  double lr = 0.01;
  double beta = 0.01;

  void validate() const;
};

// Reconstruction-error membership test. The autoencoder trains only on the
// train side; scoring uses posterior-mean reconstructions, member predicted
// when error < the given percentile of train errors.
AttackReport mia_run(const synth::Dataset& ds_train, const synth::Dataset& ds_holdout,
                     const MiaConfig& cfg);

// Scoring stage alone, exposed so threshold/AUC behavior is testable on
// synthetic error lists.
AttackReport mia_score(const std::vector<double>& errors_train,
                       const std::vector<double>& errors_holdout, const MiaConfig& cfg);

struct PoisonResult {
  synth::Dataset ds;
  std::vector<std::uint64_t> poisoned_ids;     // record ids, for auditability
  std::vector<std::size_t> poisoned_indices;   // row positions in ds
};

// Flips the label and jitters normalized age/income (clamped to [0, 1]) on
// exactly floor(rate * N) seeded rows.
PoisonResult poison(const synth::Dataset& ds, double rate, double noise_std, std::uint64_t seed);

struct PoisoningConfig {
  double rate = 0.5;
  double noise_std = 0.2;
  double train_fraction = 0.7;
  std::size_t hidden_dim = 16;
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double lr = 0.02;

  nn::TrainConfig train_config(std::uint64_t seed) const;
};

// Same-init clean vs poisoned training, accuracies on the clean test split.
AttackReport poisoning_run(const synth::Dataset& ds, const PoisoningConfig& cfg,
                           std::uint64_t seed);

struct InversionConfig {
  double y_target = 0.5;
  std::size_t steps = 1000;
  double lr = 0.01;
  std::uint64_t seed = 0;

  void validate() const;
};

struct InversionResult {
  AttackReport report;
  nn::Matrix x_hat;                // 1 x in_dim, in [0, 1]
  std::vector<double> loss_trace;  // BCE before each step, length == steps
};

// Adam over the input alone; model weights must come out bit-identical.
// true_input, when known to the harness, adds inversion_input_mae.
InversionResult inversion_run(nn::Network& model, const InversionConfig& cfg,
                              const nn::Matrix* true_input = nullptr);

struct PropertyConfig {
  std::size_t shadow_count = 16;
  std::size_t grid = 8;            // grid x grid x {0,1} probes
  std::size_t dataset_size = 400;
  std::size_t hidden_dim = 8;
  std::size_t epochs = 40;
  std::size_t batch_size = 32;
  double lr = 0.02;
  std::uint64_t seed = 0;

  nn::TrainConfig train_config(std::uint64_t seed) const;
};

// Features from the standard generator, labels re-dealt so exactly
// round(p * n) rows are positive.
synth::Dataset labeled_dataset(std::size_t n, double p, std::uint64_t seed);

// Standard architecture shared by shadows and targets.
nn::Network train_property_model(const synth::Dataset& ds, std::size_t hidden_dim,
                                 const nn::TrainConfig& cfg);

// Mean model output over the fixed probe lattice.
double probe_statistic(nn::Network& model, std::size_t grid);

struct ShadowFit {
  std::vector<double> ps;     // known positive fractions, one per shadow
  std::vector<double> stats;  // probe statistic per shadow
  double alpha = 0.0;
  double beta = 0.0;
  bool degenerate = false;  // all shadow statistics equal
};

ShadowFit train_shadows(const PropertyConfig& cfg);

AttackReport property_run(nn::Network& target, double p_true, const ShadowFit& shadows,
                          const PropertyConfig& cfg);
AttackReport property_run(nn::Network& target, double p_true, const PropertyConfig& cfg);

}  // namespace priv::attacks
