#include "priv/attacks/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "priv/attacks/auc.hpp"
#include "priv/errors.hpp"
#include "priv/nn/losses.hpp"
#include "priv/nn/optim.hpp"
#include "priv/nn/vae.hpp"
#include "priv/rng.hpp"

namespace priv::attacks {

void MiaConfig::validate() const {
  if (!(threshold_percentile > 0.0 && threshold_percentile < 100.0)) {
    throw FormatError("mia: threshold_percentile must be in (0, 100)");
  }
  if (epochs < 1) throw FormatError("mia: epochs must be at least 1");
  if (latent_dim == 0 || hidden_dim == 0) throw FormatError("mia: zero model dimension");
}

namespace {

double fraction_below(const std::vector<double>& values, double threshold) {
  std::size_t n = 0;
  for (double v : values) n += v < threshold ? 1 : 0;
  return values.empty() ? 0.0 : static_cast<double>(n) / static_cast<double>(values.size());
}

}  // namespace

AttackReport mia_score(const std::vector<double>& errors_train,
                       const std::vector<double>& errors_holdout, const MiaConfig& cfg) {
  cfg.validate();
  if (errors_train.empty() || errors_holdout.empty()) {
    throw FormatError("mia: empty error list");
  }
  const double tau = percentile(errors_train, cfg.threshold_percentile);
  const double tpr = fraction_below(errors_train, tau);
  const double fpr = fraction_below(errors_holdout, tau);

  std::vector<double> scores = errors_train;
  scores.insert(scores.end(), errors_holdout.begin(), errors_holdout.end());
  std::vector<bool> labels(scores.size(), false);
  std::fill(labels.begin(), labels.begin() + static_cast<long>(errors_train.size()), true);

  const bool degenerate =
      *std::max_element(scores.begin(), scores.end()) ==
      *std::min_element(scores.begin(), scores.end());

  AttackReport r;
  r.kind = AttackKind::mia;
  r.seed = cfg.seed;
  r.config = {{"latent_dim", std::to_string(cfg.latent_dim)},
              {"hidden_dim", std::to_string(cfg.hidden_dim)},
              {"epochs", std::to_string(cfg.epochs)},
              {"threshold_percentile", std::to_string(cfg.threshold_percentile)}};
  r.metrics["auc"] = degenerate ? 0.5 : auc(scores, labels);
  r.metrics["advantage"] = tpr - fpr;
  r.metrics["threshold"] = tau;
  r.metrics["tpr"] = tpr;
  r.metrics["fpr"] = fpr;
  r.flags["degenerate_scores"] = degenerate;

  // ROC points, one per candidate threshold, (fpr, tpr) ascending.
  std::vector<double> thresholds = scores;
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  r.curve.emplace_back(0.0, 0.0);
  for (double t : thresholds) {
    r.curve.emplace_back(fraction_below(errors_holdout, t), fraction_below(errors_train, t));
  }
  r.curve.emplace_back(1.0, 1.0);
  validate_report(r);
  return r;
}

AttackReport mia_run(const synth::Dataset& ds_train, const synth::Dataset& ds_holdout,
                     const MiaConfig& cfg) {
  cfg.validate();
  std::set<std::uint64_t> train_ids;
  for (const synth::Record& rec : ds_train.records) train_ids.insert(rec.id);
  for (const synth::Record& rec : ds_holdout.records) {
    if (train_ids.count(rec.id)) throw FormatError("mia: train/holdout overlap");
  }

  const nn::Matrix x_train = ds_train.feature_view();
  nn::VaeModel vae = nn::VaeModel::make(synth::kFeatureCount, cfg.hidden_dim, cfg.latent_dim,
                                        counter_mix(cfg.seed, 1));
  nn::TrainConfig tc;
  tc.epochs = cfg.epochs;
  tc.batch_size = cfg.batch_size;
  tc.lr = cfg.lr;
  tc.seed = counter_mix(cfg.seed, 2);
  nn::train_vae(vae, x_train, tc, cfg.beta);

  const std::vector<double> errors_train = nn::reconstruction_errors(vae, x_train);
  const std::vector<double> errors_holdout =
      nn::reconstruction_errors(vae, ds_holdout.feature_view());
  return mia_score(errors_train, errors_holdout, cfg);
}

PoisonResult poison(const synth::Dataset& ds, double rate, double noise_std,
                    std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw FormatError("poison: rate must be in [0, 1]");
  if (noise_std < 0.0) throw FormatError("poison: noise_std must be non-negative");
  const std::size_t n = ds.records.size();
  const std::size_t count = static_cast<std::size_t>(std::floor(rate * static_cast<double>(n)));

  PoisonResult out{ds, {}, {}};
  Rng rng(counter_mix(seed, 0x706f69ULL));
  std::vector<std::size_t> perm = rng.permutation(n);
  perm.resize(count);
  std::sort(perm.begin(), perm.end());
  out.poisoned_indices = perm;

  const synth::Bounds& b = ds.bounds;
  for (std::size_t idx : perm) {
    synth::Record& rec = out.ds.records[idx];
    out.poisoned_ids.push_back(rec.id);
    rec.condition = 1 - rec.condition;
    const double age_norm =
        std::clamp(b.norm_age(rec.age) + noise_std * rng.normal(), 0.0, 1.0);
    const double income_norm =
        std::clamp(b.norm_income(rec.income) + noise_std * rng.normal(), 0.0, 1.0);
    rec.age = static_cast<int>(std::lround(b.denorm_age(age_norm)));
    rec.income = b.denorm_income(income_norm);
  }
  return out;
}

nn::TrainConfig PoisoningConfig::train_config(std::uint64_t seed) const {
  nn::TrainConfig tc;
  tc.epochs = epochs;
  tc.batch_size = batch_size;
  tc.lr = lr;
  tc.loss = nn::LossKind::bce;
  tc.seed = seed;
  return tc;
}

AttackReport poisoning_run(const synth::Dataset& ds, const PoisoningConfig& cfg,
                           std::uint64_t seed) {
  const synth::SplitResult sp = synth::split(ds, cfg.train_fraction, counter_mix(seed, 1));
  const PoisonResult poisoned = poison(sp.train, cfg.rate, cfg.noise_std, counter_mix(seed, 2));

  const std::uint64_t init_seed = counter_mix(seed, 3);
  const nn::TrainConfig tc = cfg.train_config(counter_mix(seed, 4));
  const std::vector<nn::LayerSpec> arch{
      {synth::kFeatureCount, cfg.hidden_dim, nn::Activation::relu},
      {cfg.hidden_dim, 1, nn::Activation::sigmoid}};

  nn::Network net_clean(arch, init_seed);
  nn::train(net_clean, sp.train.feature_view(), sp.train.label_view(), tc);
  nn::Network net_poisoned(arch, init_seed);
  nn::train(net_poisoned, poisoned.ds.feature_view(), poisoned.ds.label_view(), tc);

  const nn::Matrix x_test = sp.holdout.feature_view();
  const nn::Matrix y_test = sp.holdout.label_view();
  const double acc_clean = nn::binary_accuracy(net_clean, x_test, y_test);
  const double acc_poisoned = nn::binary_accuracy(net_poisoned, x_test, y_test);

  AttackReport r;
  r.kind = AttackKind::poisoning;
  r.seed = seed;
  r.config = {{"rate", std::to_string(cfg.rate)},
              {"noise_std", std::to_string(cfg.noise_std)},
              {"train_fraction", std::to_string(cfg.train_fraction)},
              {"hidden_dim", std::to_string(cfg.hidden_dim)},
              {"epochs", std::to_string(cfg.epochs)}};
  r.metrics["accuracy_clean"] = acc_clean;
  r.metrics["accuracy_poisoned"] = acc_poisoned;
  r.metrics["degradation"] = acc_clean - acc_poisoned;
  r.indices = poisoned.poisoned_ids;
  validate_report(r);
  return r;
}

void InversionConfig::validate() const {
  if (!(y_target > 0.0 && y_target < 1.0)) {
    throw FormatError("inversion: y_target must be in (0, 1)");
  }
  if (!(lr > 0.0)) throw FormatError("inversion: lr must be positive");
}

InversionResult inversion_run(nn::Network& model, const InversionConfig& cfg,
                              const nn::Matrix* true_input) {
  cfg.validate();
  if (model.out_dim() != 1) throw ShapeError("inversion: model must have one output");
  const std::uint64_t checksum_before = model.param_checksum();

  Rng rng(cfg.seed);
  nn::Matrix x_hat(1, model.in_dim());
  for (double& v : x_hat.data) v = rng.uniform();
  nn::Matrix target(1, 1);
  target(0, 0) = cfg.y_target;

  nn::AdamState opt;
  opt.lr = cfg.lr;
  InversionResult result;
  result.loss_trace.reserve(cfg.steps);
  for (std::size_t step = 0; step < cfg.steps; ++step) {
    const nn::Matrix out = model.forward(x_hat);
    const nn::LossResult loss = nn::bce_loss(out, target);
    if (!std::isfinite(loss.value)) {
      throw NumericError("inversion: non-finite loss at step " + std::to_string(step));
    }
    result.loss_trace.push_back(loss.value);
    model.zero_grads();
    nn::Matrix dx = model.backward(loss.grad);
    nn::adam_step(opt, {&x_hat}, {&dx});
    for (double& v : x_hat.data) v = std::clamp(v, 0.0, 1.0);
  }
  model.zero_grads();

  const double final_out = model.forward(x_hat)(0, 0);
  if (model.param_checksum() != checksum_before) {
    throw InvariantError("inversion: model parameters changed");
  }

  AttackReport r;
  r.kind = AttackKind::inversion;
  r.seed = cfg.seed;
  r.config = {{"steps", std::to_string(cfg.steps)},
              {"lr", std::to_string(cfg.lr)},
              {"y_target", std::to_string(cfg.y_target)}};
  r.metrics["inversion_output_gap"] = std::fabs(final_out - cfg.y_target);
  r.metrics["final_output"] = final_out;
  if (!result.loss_trace.empty()) {
    r.metrics["initial_bce"] = result.loss_trace.front();
    r.metrics["final_bce"] = result.loss_trace.back();
  }
  if (true_input != nullptr) {
    if (!true_input->same_shape(x_hat)) throw ShapeError("inversion: true input shape mismatch");
    double mae = 0.0;
    for (std::size_t i = 0; i < x_hat.size(); ++i) {
      mae += std::fabs(x_hat.data[i] - true_input->data[i]);
    }
    r.metrics["inversion_input_mae"] = mae / static_cast<double>(x_hat.size());
  }
  for (std::size_t i = 0; i < result.loss_trace.size(); ++i) {
    r.curve.emplace_back(static_cast<double>(i), result.loss_trace[i]);
  }
  validate_report(r);
  result.report = std::move(r);
  result.x_hat = std::move(x_hat);
  return result;
}

synth::Dataset labeled_dataset(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw FormatError("labeled_dataset: p must be in [0, 1]");
  synth::Dataset ds = synth::generate(n, counter_mix(seed, 1));
  const std::size_t k = static_cast<std::size_t>(std::llround(p * static_cast<double>(n)));
  Rng rng(counter_mix(seed, 2));
  std::vector<std::size_t> perm = rng.permutation(n);
  for (std::size_t i = 0; i < n; ++i) ds.records[perm[i]].condition = i < k ? 1 : 0;
  return ds;
}

nn::TrainConfig PropertyConfig::train_config(std::uint64_t s) const {
  nn::TrainConfig tc;
  tc.epochs = epochs;
  tc.batch_size = batch_size;
  tc.lr = lr;
  tc.loss = nn::LossKind::bce;
  tc.seed = s;
  return tc;
}

nn::Network train_property_model(const synth::Dataset& ds, std::size_t hidden_dim,
                                 const nn::TrainConfig& cfg) {
  nn::Network net({{synth::kFeatureCount, hidden_dim, nn::Activation::relu},
                   {hidden_dim, 1, nn::Activation::sigmoid}},
                  counter_mix(cfg.seed, 0x696e6974ULL));
  nn::train(net, ds.feature_view(), ds.label_view(), cfg);
  return net;
}

double probe_statistic(nn::Network& model, std::size_t grid) {
  if (grid == 0) throw FormatError("probe_statistic: grid must be positive");
  nn::Matrix probes(2 * grid * grid, synth::kFeatureCount);
  std::size_t row = 0;
  for (int gender = 0; gender <= 1; ++gender) {
    for (std::size_t i = 0; i < grid; ++i) {
      for (std::size_t j = 0; j < grid; ++j) {
        probes(row, 0) = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
        probes(row, 1) = (static_cast<double>(j) + 0.5) / static_cast<double>(grid);
        probes(row, 2) = gender;
        ++row;
      }
    }
  }
  const nn::Matrix out = model.forward(probes);
  double sum = 0.0;
  for (double v : out.data) sum += v;
  return sum / static_cast<double>(out.size());
}

ShadowFit train_shadows(const PropertyConfig& cfg) {
  if (cfg.shadow_count < 2) throw FormatError("property: need at least two shadows");
  ShadowFit fit;
  for (std::size_t i = 0; i < cfg.shadow_count; ++i) {
    const double p = 0.1 * static_cast<double>(1 + i % 9);
    const synth::Dataset ds =
        labeled_dataset(cfg.dataset_size, p, counter_mix(cfg.seed, 100 + i));
    nn::Network model =
        train_property_model(ds, cfg.hidden_dim, cfg.train_config(counter_mix(cfg.seed, 200 + i)));
    fit.ps.push_back(p);
    fit.stats.push_back(probe_statistic(model, cfg.grid));
  }

  const std::size_t n = fit.ps.size();
  double mean_s = 0.0, mean_p = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_s += fit.stats[i];
    mean_p += fit.ps[i];
  }
  mean_s /= static_cast<double>(n);
  mean_p /= static_cast<double>(n);
  double var_s = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    var_s += (fit.stats[i] - mean_s) * (fit.stats[i] - mean_s);
    cov += (fit.stats[i] - mean_s) * (fit.ps[i] - mean_p);
  }
  if (var_s < 1e-12) {
    fit.degenerate = true;
    fit.alpha = 0.0;
    fit.beta = mean_p;
  } else {
    fit.alpha = cov / var_s;
    fit.beta = mean_p - fit.alpha * mean_s;
  }
  return fit;
}

AttackReport property_run(nn::Network& target, double p_true, const ShadowFit& shadows,
                          const PropertyConfig& cfg) {
  if (!(p_true >= 0.0 && p_true <= 1.0)) throw FormatError("property: p_true must be in [0, 1]");
  const double s = probe_statistic(target, cfg.grid);
  const double estimate = std::clamp(shadows.alpha * s + shadows.beta, 0.0, 1.0);

  AttackReport r;
  r.kind = AttackKind::property;
  r.seed = cfg.seed;
  r.config = {{"shadow_count", std::to_string(cfg.shadow_count)},
              {"grid", std::to_string(cfg.grid)},
              {"dataset_size", std::to_string(cfg.dataset_size)},
              {"epochs", std::to_string(cfg.epochs)}};
  r.metrics["property_estimate"] = estimate;
  r.metrics["property_mae"] = std::fabs(estimate - p_true);
  r.metrics["statistic"] = s;
  r.metrics["alpha"] = shadows.alpha;
  r.metrics["beta"] = shadows.beta;
  r.flags["degenerate_shadows"] = shadows.degenerate;
  for (std::size_t i = 0; i < shadows.ps.size(); ++i) {
    r.curve.emplace_back(shadows.stats[i], shadows.ps[i]);
  }
  validate_report(r);
  return r;
}

AttackReport property_run(nn::Network& target, double p_true, const PropertyConfig& cfg) {
  return property_run(target, p_true, train_shadows(cfg), cfg);
}

}  // namespace priv::attacks
