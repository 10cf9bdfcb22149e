#include "priv/attacks/report.hpp"

#include <cmath>
#include <cstdio>

#include "priv/errors.hpp"

namespace priv::attacks {

const char* attack_kind_name(AttackKind k) {
  switch (k) {
    case AttackKind::mia: return "mia";
    case AttackKind::extraction: return "extraction";
    case AttackKind::poisoning: return "poisoning";
    case AttackKind::inversion: return "inversion";
    case AttackKind::property: return "property";
  }
  return "unknown";
}

AttackKind parse_attack_kind(const std::string& s) {
  for (AttackKind k : {AttackKind::mia, AttackKind::extraction, AttackKind::poisoning,
                       AttackKind::inversion, AttackKind::property}) {
    if (s == attack_kind_name(k)) return k;
  }
  throw FormatError("unknown attack kind: " + s);
}

namespace {

const std::vector<std::string>& required_metrics(AttackKind k) {
  static const std::vector<std::string> kMia{"auc", "advantage"};
  static const std::vector<std::string> kExtraction{"extraction_rate", "canary_rank"};
  static const std::vector<std::string> kPoisoning{"accuracy_clean", "accuracy_poisoned",
                                                   "degradation"};
  static const std::vector<std::string> kInversion{"inversion_output_gap"};
  static const std::vector<std::string> kProperty{"property_mae", "property_estimate"};
  switch (k) {
    case AttackKind::mia: return kMia;
    case AttackKind::extraction: return kExtraction;
    case AttackKind::poisoning: return kPoisoning;
    case AttackKind::inversion: return kInversion;
    case AttackKind::property: return kProperty;
  }
  return kMia;
}

}  // namespace

void validate_report(const AttackReport& r) {
  for (const std::string& name : required_metrics(r.kind)) {
    if (!r.metrics.count(name)) {
      throw InvariantError(std::string("report missing metric ") + name + " for " +
                           attack_kind_name(r.kind));
    }
  }
  for (const auto& [name, value] : r.metrics) {
    if (!std::isfinite(value)) throw InvariantError("report metric not finite: " + name);
  }
  for (const auto& [x, y] : r.curve) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw InvariantError("report curve not finite");
  }
}

nlohmann::json report_to_json(const AttackReport& r) {
  validate_report(r);
  nlohmann::json j;
  j["attack_kind"] = attack_kind_name(r.kind);
  j["seed"] = r.seed;
  j["defended"] = r.defended;
  j["config"] = r.config;
  j["metrics"] = r.metrics;
  j["flags"] = r.flags;
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& [x, y] : r.curve) curve.push_back({x, y});
  j["curve"] = std::move(curve);
  j["indices"] = r.indices;
  j["note"] = r.note;
  return j;
}

AttackReport report_from_json(const nlohmann::json& j) {
  AttackReport r;
  try {
    r.kind = parse_attack_kind(j.at("attack_kind").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.defended = j.at("defended").get<bool>();
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    r.metrics = j.at("metrics").get<std::map<std::string, double>>();
    r.flags = j.at("flags").get<std::map<std::string, bool>>();
    for (const nlohmann::json& point : j.at("curve")) {
      r.curve.emplace_back(point.at(0).get<double>(), point.at(1).get<double>());
    }
    r.indices = j.at("indices").get<std::vector<std::uint64_t>>();
    r.note = j.at("note").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report_from_json: ") + e.what());
  }
  validate_report(r);
  return r;
}

std::string curve_to_csv(const AttackReport& r, const std::string& x_name,
                         const std::string& y_name) {
  std::string out = x_name + "," + y_name + "\n";
  char buf[64];
  for (const auto& [x, y] : r.curve) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, y);
    out += buf;
  }
  return out;
}

}  // namespace priv::attacks
