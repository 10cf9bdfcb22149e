#include "priv/cli/eval.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <future>
#include <memory>
#include <utility>

#include "priv/attacks/attacks.hpp"
#include "priv/attacks/auc.hpp"
#include "priv/attacks/charlm.hpp"
#include "priv/attacks/extraction.hpp"
#include "priv/errors.hpp"
#include "priv/gw/backend.hpp"
#include "priv/gw/gateway.hpp"
#include "priv/pii/redact.hpp"
#include "priv/pii/vault.hpp"
#include "priv/rng.hpp"

namespace priv::cli {

namespace {

using attacks::AttackKind;
using attacks::AttackReport;

// Fixed internal streams, independent of the user's seed list so per-seed
// results never depend on list order.
constexpr std::uint64_t kShadowSeed = 7777;
constexpr std::uint64_t kCorpusSeed = 4242;
constexpr std::uint64_t kSuiteSeed = 1729;

double median_of(std::vector<double> v) { return attacks::percentile(std::move(v), 50.0); }

std::string iso_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double snap_to_bucket(double v, const std::vector<double>& edges) {
  if (v < edges.front()) return edges.front();
  if (v >= edges.back()) return edges.back();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (v < edges[i + 1]) return (edges[i] + edges[i + 1]) / 2.0;
  }
  return edges.back();
}

struct CanaryFixture {
  std::string corpus;
  std::string canary;
  std::size_t prefix_len = 0;
};

// Rendered-sentence corpus; the canary record id sits far outside the corpus
// range so its identifiers cannot occur by coincidence.
CanaryFixture make_canary_fixture(std::size_t corpus_bytes) {
  CanaryFixture f;
  std::size_t id = 0;
  while (f.corpus.size() < corpus_bytes) {
    const synth::Record r = synth::make_record(kCorpusSeed, id);
    f.corpus += synth::render_text(r, id % synth::template_count()).text;
    f.corpus += " ";
    ++id;
  }
  const synth::Record target = synth::make_record(kCorpusSeed, 1000000);
  const synth::RenderedDoc doc = synth::render_text(target, 0);
  f.canary = doc.text;
  f.prefix_len = doc.spans.at(1).begin;
  return f;
}

AttackReport run_mia_seed(const EvalConfig& cfg, const pii::RedactionPolicy& pol, bool defended,
                          std::uint64_t seed) {
  synth::Dataset ds = synth::generate(2 * cfg.mia_records, counter_mix(seed, 11));
  if (defended) ds = generalize_dataset(ds, pol.age_buckets, pol.income_buckets);
  const synth::SplitResult sp = synth::split(ds, 0.5, counter_mix(seed, 12));
  attacks::MiaConfig mc;
  mc.epochs = cfg.mia_epochs;
  mc.seed = seed;
  AttackReport r = attacks::mia_run(sp.train, sp.holdout, mc);
  r.defended = defended;
  return r;
}

AttackReport run_extraction_seed(const EvalConfig& cfg, const pii::RedactionPolicy& pol,
                                 const CanaryFixture& f, bool defended, std::uint64_t seed) {
  if (!defended) {
    return attacks::extraction_run(f.corpus, f.canary, cfg.canary_repetitions, f.prefix_len,
                                   cfg.ngram_order, seed);
  }
  const std::string planted =
      attacks::insert_repeated(f.corpus, f.canary, cfg.canary_repetitions, seed);
  const std::string redacted = pii::redact_text(planted, pol, nullptr).text;
  return attacks::extraction_score(redacted, f.canary, f.prefix_len, cfg.ngram_order, seed, true);
}

AttackReport run_poisoning_seed(const EvalConfig& cfg, const pii::RedactionPolicy& pol,
                                bool defended, std::uint64_t seed) {
  synth::Dataset ds = synth::generate(cfg.poison_records, counter_mix(seed, 21));
  if (defended) ds = generalize_dataset(ds, pol.age_buckets, pol.income_buckets);
  attacks::PoisoningConfig pc;
  pc.rate = cfg.poison_rate;
  pc.noise_std = cfg.poison_noise;
  AttackReport r = attacks::poisoning_run(ds, pc, seed);
  r.defended = defended;
  return r;
}

AttackReport run_inversion_seed(const EvalConfig& cfg, const pii::RedactionPolicy& pol,
                                bool defended, std::uint64_t seed) {
  synth::Dataset ds = synth::generate(cfg.inversion_train_records, counter_mix(seed, 31));
  if (defended) ds = generalize_dataset(ds, pol.age_buckets, pol.income_buckets);
  nn::Network net({{synth::kFeatureCount, 16, nn::Activation::relu},
                   {16, 1, nn::Activation::sigmoid}},
                  counter_mix(seed, 32));
  nn::TrainConfig tc;
  tc.epochs = 30;
  tc.lr = 0.02;
  tc.seed = counter_mix(seed, 33);
  nn::train(net, ds.feature_view(), ds.label_view(), tc);

  attacks::InversionConfig ic;
  ic.y_target = cfg.inversion_target;
  ic.steps = cfg.inversion_steps;
  ic.seed = seed;
  AttackReport r = attacks::inversion_run(net, ic).report;
  r.defended = defended;
  return r;
}

AttackReport run_property_seed(const EvalConfig& cfg, const pii::RedactionPolicy& pol,
                               const attacks::ShadowFit& shadows, const attacks::PropertyConfig& pc,
                               bool defended, std::uint64_t seed) {
  attacks::PropertyConfig run_cfg = pc;
  run_cfg.seed = seed;
  synth::Dataset ds =
      attacks::labeled_dataset(run_cfg.dataset_size, cfg.property_p, counter_mix(seed, 104));
  if (defended) ds = generalize_dataset(ds, pol.age_buckets, pol.income_buckets);
  nn::Network target = attacks::train_property_model(ds, run_cfg.hidden_dim,
                                                     run_cfg.train_config(counter_mix(seed, 204)));
  AttackReport r = attacks::property_run(target, cfg.property_p, shadows, run_cfg);
  r.defended = defended;
  return r;
}

// One (attack, defense) cell over every seed; per-seed errors are recorded
// and the cell keeps going.
template <typename RunFn>
AttackCell run_cell(const std::vector<std::uint64_t>& seeds, RunFn&& run) {
  AttackCell cell;
  for (std::uint64_t seed : seeds) {
    try {
      cell.per_seed.push_back(run(seed));
    } catch (const std::exception& e) {
      cell.failures.push_back({seed, e.what()});
    }
  }
  if (!cell.per_seed.empty()) {
    for (const auto& [key, first_value] : cell.per_seed.front().metrics) {
      (void)first_value;
      std::vector<double> vals;
      for (const AttackReport& r : cell.per_seed) {
        auto it = r.metrics.find(key);
        if (it == r.metrics.end()) break;
        vals.push_back(it->second);
      }
      if (vals.size() == cell.per_seed.size()) cell.median_metrics[key] = median_of(vals);
    }
  }
  return cell;
}

std::string perturb_ascii(const std::string& text, std::uint64_t seed) {
  std::string out = text;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(out[i]);
    if (c >= 0x80) continue;  // multi-byte sequences stay intact
    if (counter_uniform(seed, i) < 0.10) {
      out[i] = static_cast<char>('a' + counter_mix(seed ^ 0x51ED270693CE3979ULL, i) % 26);
    }
  }
  return out;
}

std::vector<std::string> rendered_messages(std::size_t n, std::uint64_t seed) {
  std::vector<std::string> msgs;
  msgs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const synth::Record r = synth::make_record(seed, 500000 + i);
    msgs.push_back(synth::render_text(r, i % synth::template_count()).text);
  }
  return msgs;
}

struct EvalGateway {
  std::shared_ptr<gw::MockBackend> backend;
  std::unique_ptr<gw::Gateway> gw;
  std::string key = "eval-admin-key";
};

// Gateway wired for measurement: admin key (may index documents), effectively
// unlimited bucket, mask policy, RAG on.
EvalGateway make_eval_gateway(gw::ClockFn clock) {
  EvalGateway eg;
  std::array<unsigned char, 32> pepper{};
  pepper.fill(0x42);
  gw::KeyStore keys(pepper);
  keys.add("eval-admin", Role::admin, "eval", eg.key);
  gw::GatewayConfig gc;
  gc.bucket.capacity = 1e15;
  gc.bucket.refill_rate = 1e15;
  gc.rag_enabled = true;
  gc.rag_k = 2;
  eg.backend = std::make_shared<gw::MockBackend>();
  eg.gw = std::make_unique<gw::Gateway>(gc, std::move(keys), eg.backend, nullptr,
                                        std::move(clock));
  return eg;
}

void index_docs(EvalGateway& eg, std::size_t n) {
  const pii::RedactionPolicy pol = pii::RedactionPolicy::uniform(pii::Action::mask);
  for (std::size_t i = 0; i < n; ++i) {
    const synth::Record r = synth::make_record(kSuiteSeed, i);
    const std::string text = synth::render_text(r, i % synth::template_count()).text;
    const gw::GwResponse res = eg.gw->put_doc(eg.key, "doc-" + std::to_string(i), text);
    if (res.status != 200) {
      throw StateError("indexing failed: " + res.body.dump());
    }
  }
}

GatewayMetrics measure_gateway(const EvalConfig& cfg) {
  GatewayMetrics m;
  m.embedding_dim = gw::kEmbedDim;
  m.retrieval_recall_at_1 = retrieval_recall_at_1(cfg.retrieval_docs, kSuiteSeed);
  m.index_size = cfg.retrieval_docs;

  // Simulated clock: latency counts pipeline stages, not wall time.
  gw::TickingClock ticking;
  EvalGateway eg = make_eval_gateway(ticking.fn());
  index_docs(eg, std::min<std::size_t>(cfg.retrieval_docs, 32));
  const std::vector<std::string> msgs = rendered_messages(
      std::min<std::size_t>(cfg.latency_requests, 32), kSuiteSeed ^ 0x9999);
  for (std::size_t i = 0; i < cfg.latency_requests; ++i) {
    const gw::GwResponse res = eg.gw->chat(eg.key, msgs[i % msgs.size()]);
    if (res.status != 200) throw StateError("latency probe failed: " + res.body.dump());
  }
  std::vector<double> lat;
  for (const gw::AuditEntry& e : eg.gw->audit_log()) {
    if (e.route == "/v1/chat") lat.push_back(e.latency_ms);
  }
  if (lat.empty()) throw StateError("no chat latencies recorded");
  m.latency_p50_ms = attacks::percentile(lat, 50.0);
  m.latency_p95_ms = attacks::percentile(lat, 95.0);
  return m;
}

std::vector<ThroughputPoint> measure_scalability(const EvalConfig& cfg) {
  std::vector<ThroughputPoint> points;
  const std::vector<std::string> msgs = rendered_messages(16, kSuiteSeed ^ 0x7777);
  for (std::size_t docs : cfg.throughput_doc_counts) {
    EvalGateway eg = make_eval_gateway(gw::steady_now);
    index_docs(eg, docs);
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < cfg.throughput_requests; ++i) {
      const gw::GwResponse res = eg.gw->chat(eg.key, msgs[i % msgs.size()]);
      if (res.status != 200) throw StateError("throughput probe failed: " + res.body.dump());
    }
    const double elapsed =
        std::max(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                 1e-9);
    points.push_back({docs, static_cast<double>(cfg.throughput_requests) / elapsed});
  }
  return points;
}

nlohmann::json thresholds_to_json(const ExposureThresholds& t) {
  return {{"auc_high", t.auc_high},
          {"auc_medium", t.auc_medium},
          {"extraction_high", t.extraction_high}};
}

ExposureThresholds thresholds_from_json(const nlohmann::json& j) {
  ExposureThresholds t;
  t.auc_high = j.value("auc_high", t.auc_high);
  t.auc_medium = j.value("auc_medium", t.auc_medium);
  t.extraction_high = j.value("extraction_high", t.extraction_high);
  t.validate();
  return t;
}

nlohmann::json cell_to_json(const AttackCell& c) {
  nlohmann::json per_seed = nlohmann::json::array();
  for (const AttackReport& r : c.per_seed) per_seed.push_back(attacks::report_to_json(r));
  nlohmann::json failures = nlohmann::json::array();
  for (const AttackCell::Failure& f : c.failures) {
    failures.push_back({{"seed", f.seed}, {"error", f.error}});
  }
  return {{"per_seed", std::move(per_seed)},
          {"median_metrics", c.median_metrics},
          {"failures", std::move(failures)}};
}

AttackCell cell_from_json(const nlohmann::json& j) {
  AttackCell c;
  for (const nlohmann::json& r : j.at("per_seed")) {
    c.per_seed.push_back(attacks::report_from_json(r));
  }
  c.median_metrics = j.at("median_metrics").get<std::map<std::string, double>>();
  for (const nlohmann::json& f : j.at("failures")) {
    c.failures.push_back({f.at("seed").get<std::uint64_t>(), f.at("error").get<std::string>()});
  }
  return c;
}

}  // namespace

void EvalConfig::validate() const {
  if (seeds.empty()) throw FormatError("eval config: seeds must be non-empty");
  if (mia_records < 2) throw FormatError("eval config: mia_records must be at least 2");
  if (mia_epochs == 0) throw FormatError("eval config: mia_epochs must be positive");
  if (corpus_bytes < 64) throw FormatError("eval config: corpus_bytes too small");
  if (ngram_order < attacks::kMinOrder || ngram_order > attacks::kMaxOrder) {
    throw FormatError("eval config: ngram_order out of range");
  }
  if (poison_records == 0) throw FormatError("eval config: poison_records must be positive");
  if (poison_rate < 0.0 || poison_rate > 1.0) {
    throw FormatError("eval config: poison_rate must lie in [0, 1]");
  }
  if (poison_noise < 0.0) throw FormatError("eval config: poison_noise must be non-negative");
  if (inversion_train_records < 2) {
    throw FormatError("eval config: inversion_train_records must be at least 2");
  }
  if (inversion_target <= 0.0 || inversion_target >= 1.0) {
    throw FormatError("eval config: inversion_target must lie in (0, 1)");
  }
  if (inversion_steps == 0) throw FormatError("eval config: inversion_steps must be positive");
  if (shadow_count < 2) throw FormatError("eval config: shadow_count must be at least 2");
  if (property_p <= 0.0 || property_p >= 1.0) {
    throw FormatError("eval config: property_p must lie in (0, 1)");
  }
  if (retrieval_docs == 0) throw FormatError("eval config: retrieval_docs must be positive");
  if (latency_requests == 0) throw FormatError("eval config: latency_requests must be positive");
  if (throughput_requests == 0) {
    throw FormatError("eval config: throughput_requests must be positive");
  }
  thresholds.validate();
}

nlohmann::json eval_config_to_json(const EvalConfig& c) {
  return {{"seeds", c.seeds},
          {"sensitivity", level_name(c.sensitivity)},
          {"thresholds", thresholds_to_json(c.thresholds)},
          {"mia_records", c.mia_records},
          {"mia_epochs", c.mia_epochs},
          {"corpus_bytes", c.corpus_bytes},
          {"canary_repetitions", c.canary_repetitions},
          {"ngram_order", c.ngram_order},
          {"poison_records", c.poison_records},
          {"poison_rate", c.poison_rate},
          {"poison_noise", c.poison_noise},
          {"inversion_train_records", c.inversion_train_records},
          {"inversion_target", c.inversion_target},
          {"inversion_steps", c.inversion_steps},
          {"shadow_count", c.shadow_count},
          {"property_p", c.property_p},
          {"retrieval_docs", c.retrieval_docs},
          {"latency_requests", c.latency_requests},
          {"throughput_doc_counts", c.throughput_doc_counts},
          {"throughput_requests", c.throughput_requests}};
}

EvalConfig eval_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("eval config must be a JSON object");
  EvalConfig c;
  c.seeds = j.value("seeds", c.seeds);
  if (j.contains("sensitivity")) c.sensitivity = parse_level(j.at("sensitivity").get<std::string>());
  if (j.contains("thresholds")) c.thresholds = thresholds_from_json(j.at("thresholds"));
  c.mia_records = j.value("mia_records", c.mia_records);
  c.mia_epochs = j.value("mia_epochs", c.mia_epochs);
  c.corpus_bytes = j.value("corpus_bytes", c.corpus_bytes);
  c.canary_repetitions = j.value("canary_repetitions", c.canary_repetitions);
  c.ngram_order = j.value("ngram_order", c.ngram_order);
  c.poison_records = j.value("poison_records", c.poison_records);
  c.poison_rate = j.value("poison_rate", c.poison_rate);
  c.poison_noise = j.value("poison_noise", c.poison_noise);
  c.inversion_train_records = j.value("inversion_train_records", c.inversion_train_records);
  c.inversion_target = j.value("inversion_target", c.inversion_target);
  c.inversion_steps = j.value("inversion_steps", c.inversion_steps);
  c.shadow_count = j.value("shadow_count", c.shadow_count);
  c.property_p = j.value("property_p", c.property_p);
  c.retrieval_docs = j.value("retrieval_docs", c.retrieval_docs);
  c.latency_requests = j.value("latency_requests", c.latency_requests);
  c.throughput_doc_counts = j.value("throughput_doc_counts", c.throughput_doc_counts);
  c.throughput_requests = j.value("throughput_requests", c.throughput_requests);
  c.validate();
  return c;
}

synth::Dataset generalize_dataset(const synth::Dataset& ds, const std::vector<double>& age_edges,
                                  const std::vector<double>& income_edges) {
  if (age_edges.size() < 2 || income_edges.size() < 2) {
    throw FormatError("generalize_dataset: need at least two bucket edges");
  }
  synth::Dataset out = ds;
  for (synth::Record& r : out.records) {
    r.age = static_cast<int>(std::lround(snap_to_bucket(r.age, age_edges)));
    r.income = snap_to_bucket(r.income, income_edges);
  }
  return out;
}

double retrieval_recall_at_1(std::size_t n_docs, std::uint64_t seed) {
  if (n_docs == 0) throw FormatError("retrieval suite: need at least one document");
  pii::VaultKey key;
  key.bytes.fill(0x33);
  pii::Vault vault(key, [] { return std::int64_t{0}; });
  // Pseudonymize rather than mask so distinct identities stay distinct in
  // the index and a perturbed query still prefers its own document.
  const pii::RedactionPolicy pol = pii::RedactionPolicy::uniform(pii::Action::pseudonymize);

  gw::VectorStore store;
  std::vector<std::string> stored;
  stored.reserve(n_docs);
  for (std::size_t i = 0; i < n_docs; ++i) {
    const synth::Record r = synth::make_record(seed, i);
    const std::string text = synth::render_text(r, i % synth::template_count()).text;
    const std::string red = pii::redact_text(text, pol, &vault).text;
    store.put("doc-" + std::to_string(i), red);
    stored.push_back(red);
  }

  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_docs; ++i) {
    const std::string query = perturb_ascii(stored[i], counter_mix(seed, 900000 + i));
    const gw::KnnResult res = store.knn(query, 1);
    if (!res.hits.empty() && res.hits.front().doc_id == "doc-" + std::to_string(i)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n_docs);
}

attacks::AttackReport run_single_attack(attacks::AttackKind kind, const EvalConfig& cfg,
                                        bool defended, std::uint64_t seed) {
  cfg.validate();
  const pii::RedactionPolicy pol = pii::RedactionPolicy::uniform(pii::Action::mask);
  switch (kind) {
    case AttackKind::mia:
      return run_mia_seed(cfg, pol, defended, seed);
    case AttackKind::extraction:
      return run_extraction_seed(cfg, pol, make_canary_fixture(cfg.corpus_bytes), defended, seed);
    case AttackKind::poisoning:
      return run_poisoning_seed(cfg, pol, defended, seed);
    case AttackKind::inversion:
      return run_inversion_seed(cfg, pol, defended, seed);
    case AttackKind::property: {
      attacks::PropertyConfig pc;
      pc.shadow_count = cfg.shadow_count;
      pc.seed = kShadowSeed;
      return run_property_seed(cfg, pol, attacks::train_shadows(pc), pc, defended, seed);
    }
  }
  throw StateError("unreachable attack kind");
}

nlohmann::json eval_report_to_json(const EvalReport& r) {
  nlohmann::json attacks_j = nlohmann::json::object();
  for (const auto& [kind, pair] : r.attacks) {
    attacks_j[attacks::attack_kind_name(kind)] = {{"undefended", cell_to_json(pair.undefended)},
                                                  {"defended", cell_to_json(pair.defended)}};
  }
  nlohmann::json scal = nlohmann::json::array();
  for (const ThroughputPoint& p : r.timing.scalability) {
    scal.push_back({{"docs", p.docs}, {"chats_per_second", p.chats_per_second}});
  }
  return {{"version", r.version},
          {"config", eval_config_to_json(r.config)},
          {"attacks", std::move(attacks_j)},
          {"gateway",
           {{"embedding_dim", r.gateway.embedding_dim},
            {"index_size", r.gateway.index_size},
            {"retrieval_recall_at_1", r.gateway.retrieval_recall_at_1},
            {"latency_p50_ms", r.gateway.latency_p50_ms},
            {"latency_p95_ms", r.gateway.latency_p95_ms}}},
          {"risk",
           {{"sensitivity", level_name(r.risk.sensitivity)},
            {"exposure", level_name(r.risk.exposure)},
            {"risk", level_name(r.risk.risk)},
            {"thresholds", thresholds_to_json(r.risk.thresholds)},
            {"partial", r.risk.partial}}},
          {"timing",
           {{"generated_at", r.timing.generated_at},
            {"total_seconds", r.timing.total_seconds},
            {"scalability", std::move(scal)}}}};
}

EvalReport eval_report_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("eval report must be a JSON object");
  EvalReport r;
  r.version = j.at("version").get<int>();
  if (r.version != 1) throw FormatError("unsupported eval report version");
  r.config = eval_config_from_json(j.at("config"));
  for (const auto& [name, pair] : j.at("attacks").items()) {
    AttackPair p;
    p.undefended = cell_from_json(pair.at("undefended"));
    p.defended = cell_from_json(pair.at("defended"));
    r.attacks[attacks::parse_attack_kind(name)] = std::move(p);
  }
  const nlohmann::json& g = j.at("gateway");
  r.gateway.embedding_dim = g.at("embedding_dim").get<std::size_t>();
  r.gateway.index_size = g.at("index_size").get<std::size_t>();
  r.gateway.retrieval_recall_at_1 = g.at("retrieval_recall_at_1").get<double>();
  r.gateway.latency_p50_ms = g.at("latency_p50_ms").get<double>();
  r.gateway.latency_p95_ms = g.at("latency_p95_ms").get<double>();
  const nlohmann::json& k = j.at("risk");
  r.risk.sensitivity = parse_level(k.at("sensitivity").get<std::string>());
  r.risk.exposure = parse_level(k.at("exposure").get<std::string>());
  r.risk.risk = parse_level(k.at("risk").get<std::string>());
  r.risk.thresholds = thresholds_from_json(k.at("thresholds"));
  r.risk.partial = k.at("partial").get<bool>();
  const nlohmann::json& t = j.at("timing");
  r.timing.generated_at = t.at("generated_at").get<std::string>();
  r.timing.total_seconds = t.at("total_seconds").get<double>();
  for (const nlohmann::json& p : t.at("scalability")) {
    r.timing.scalability.push_back(
        {p.at("docs").get<std::size_t>(), p.at("chats_per_second").get<double>()});
  }
  return r;
}

std::string deterministic_view(const EvalReport& r) {
  nlohmann::json j = eval_report_to_json(r);
  j.erase("timing");
  return j.dump(2) + "\n";
}

EvalReport run_eval(const EvalConfig& cfg) {
  cfg.validate();
  const auto wall0 = std::chrono::steady_clock::now();

  const pii::RedactionPolicy pol = pii::RedactionPolicy::uniform(pii::Action::mask);

  // Shadows are the attacker's own models: trained once on an internal seed,
  // shared by both property cells and every run seed.
  attacks::PropertyConfig prop_cfg;
  prop_cfg.shadow_count = cfg.shadow_count;
  prop_cfg.seed = kShadowSeed;
  const attacks::ShadowFit shadows = attacks::train_shadows(prop_cfg);
  const CanaryFixture fixture = make_canary_fixture(cfg.corpus_bytes);

  EvalReport report;
  report.config = cfg;

  std::map<AttackKind, AttackPair> cells;
  std::vector<std::pair<std::pair<AttackKind, bool>, std::future<AttackCell>>> jobs;
  for (const AttackKind kind :
       {AttackKind::mia, AttackKind::extraction, AttackKind::poisoning, AttackKind::inversion,
        AttackKind::property}) {
    for (const bool defended : {false, true}) {
      jobs.emplace_back(
          std::make_pair(kind, defended),
          std::async(std::launch::async, [&cfg, &pol, &shadows, &prop_cfg, &fixture, kind,
                                          defended] {
            return run_cell(cfg.seeds, [&](std::uint64_t seed) {
              switch (kind) {
                case AttackKind::mia:
                  return run_mia_seed(cfg, pol, defended, seed);
                case AttackKind::extraction:
                  return run_extraction_seed(cfg, pol, fixture, defended, seed);
                case AttackKind::poisoning:
                  return run_poisoning_seed(cfg, pol, defended, seed);
                case AttackKind::inversion:
                  return run_inversion_seed(cfg, pol, defended, seed);
                case AttackKind::property:
                  return run_property_seed(cfg, pol, shadows, prop_cfg, defended, seed);
              }
              throw StateError("unreachable attack kind");
            });
          }));
    }
  }
  for (auto& [key, fut] : jobs) {
    AttackCell cell = fut.get();
    if (key.second) {
      cells[key.first].defended = std::move(cell);
    } else {
      cells[key.first].undefended = std::move(cell);
    }
  }
  report.attacks = std::move(cells);

  report.gateway = measure_gateway(cfg);

  ExposureInputs inputs;
  const AttackCell& mia_u = report.attacks.at(AttackKind::mia).undefended;
  if (auto it = mia_u.median_metrics.find("auc"); it != mia_u.median_metrics.end()) {
    inputs.mia_auc = it->second;
  }
  const AttackCell& ext_u = report.attacks.at(AttackKind::extraction).undefended;
  if (auto it = ext_u.median_metrics.find("extraction_rate"); it != ext_u.median_metrics.end()) {
    inputs.extraction_rate = it->second;
  }
  const ExposureOutcome exposure = exposure_from_attacks(inputs, cfg.thresholds);
  report.risk.sensitivity = cfg.sensitivity;
  report.risk.exposure = exposure.exposure;
  report.risk.risk = risk_score(cfg.sensitivity, exposure.exposure);
  report.risk.thresholds = cfg.thresholds;
  report.risk.partial = exposure.partial;

  report.timing.scalability = measure_scalability(cfg);
  report.timing.generated_at = iso_utc_now();
  report.timing.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return report;
}

}  // namespace priv::cli
