#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "priv/attacks/report.hpp"
#include "priv/cli/risk.hpp"
#include "priv/synth/synthdata.hpp"

namespace priv::cli {

struct EvalConfig {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  Level sensitivity = Level::high;  // data-owner judgment, not inferred
  ExposureThresholds thresholds;

  std::size_t mia_records = 64;  // per side
  std::size_t mia_epochs = 2000;

  std::size_t corpus_bytes = 5000;
  std::size_t canary_repetitions = 20;
  std::size_t ngram_order = 5;

  std::size_t poison_records = 1000;
  double poison_rate = 0.5;
  double poison_noise = 0.2;

  std::size_t inversion_train_records = 400;
  double inversion_target = 0.5;
  std::size_t inversion_steps = 1000;

  std::size_t shadow_count = 16;
  double property_p = 0.5;

  std::size_t retrieval_docs = 1000;
  std::size_t latency_requests = 200;
  std::vector<std::size_t> throughput_doc_counts{100, 1000, 10000};
  std::size_t throughput_requests = 50;

  void validate() const;

  bool operator==(const EvalConfig&) const = default;
};

nlohmann::json eval_config_to_json(const EvalConfig& c);
// Starts from defaults; keys present in j override.
EvalConfig eval_config_from_json(const nlohmann::json& j);

struct AttackCell {
  std::vector<attacks::AttackReport> per_seed;
  std::map<std::string, double> median_metrics;  // over successful seeds

  struct Failure {
    std::uint64_t seed = 0;
    std::string error;

    bool operator==(const Failure&) const = default;
  };
  std::vector<Failure> failures;

  bool operator==(const AttackCell&) const = default;
};

struct AttackPair {
  AttackCell undefended;
  AttackCell defended;

  bool operator==(const AttackPair&) const = default;
};

struct GatewayMetrics {
  std::size_t embedding_dim = 0;
  std::size_t index_size = 0;
  double retrieval_recall_at_1 = 0.0;
  double latency_p50_ms = 0.0;  // simulated clock, deterministic
  double latency_p95_ms = 0.0;

  bool operator==(const GatewayMetrics&) const = default;
};

struct ThroughputPoint {
  std::size_t docs = 0;
  double chats_per_second = 0.0;

  bool operator==(const ThroughputPoint&) const = default;
};

// Wall-clock measurements; excluded, with the timestamp, from the
// deterministic view of a report.
struct EvalTiming {
  std::string generated_at;  // UTC, ISO-8601
  double total_seconds = 0.0;
  std::vector<ThroughputPoint> scalability;

  bool operator==(const EvalTiming&) const = default;
};

struct RiskAssessment {
  Level sensitivity = Level::high;
  Level exposure = Level::low;
  Level risk = Level::low;
  ExposureThresholds thresholds;
  bool partial = false;

  bool operator==(const RiskAssessment&) const = default;
};

struct EvalReport {
  int version = 1;
  EvalConfig config;
  std::map<attacks::AttackKind, AttackPair> attacks;
  GatewayMetrics gateway;
  RiskAssessment risk;
  EvalTiming timing;

  bool operator==(const EvalReport&) const = default;
};

nlohmann::json eval_report_to_json(const EvalReport& r);
EvalReport eval_report_from_json(const nlohmann::json& j);

// Serialization with the wall-clock timing section removed: two runs with
// equal config and seeds must agree byte for byte on this view.
std::string deterministic_view(const EvalReport& r);

// Coarsens age and income to their policy-bucket midpoints. Defended attack
// cells train on this view of the data; everything else is untouched.
synth::Dataset generalize_dataset(const synth::Dataset& ds, const std::vector<double>& age_edges,
                                  const std::vector<double>& income_edges);

// Pseudonymized rendered records indexed in a vector store, queried with 10%
// character perturbation; fraction retrieving their own doc at rank 1.
double retrieval_recall_at_1(std::size_t n_docs, std::uint64_t seed);

// One cell entry, fixtures included (corpus, shadow models, trained target).
// This is what each (kind, seed) slot of run_eval executes.
attacks::AttackReport run_single_attack(attacks::AttackKind kind, const EvalConfig& cfg,
                                        bool defended, std::uint64_t seed);

EvalReport run_eval(const EvalConfig& cfg);

}  // namespace priv::cli
