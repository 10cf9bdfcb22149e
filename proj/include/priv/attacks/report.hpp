#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace priv::attacks {

enum class AttackKind { mia, extraction, poisoning, inversion, property };

const char* attack_kind_name(AttackKind k);
AttackKind parse_attack_kind(const std::string& s);

/// Result of one seeded experiment. `metrics` must hold the kind's required
/// entries and every value must be finite; `curve` carries ROC points or a
/// loss trace as (x, y) pairs.
struct AttackReport {
  AttackKind kind = AttackKind::mia;
  std::uint64_t seed = 0;
  bool defended = false;
  std::map<std::string, std::string> config;
  std::map<std::string, double> metrics;
  std::map<std::string, bool> flags;
  std::vector<std::pair<double, double>> curve;
  std::vector<std::uint64_t> indices;
  std::string note;

  bool operator==(const AttackReport&) const = default;
};

// Throws unless the kind's required metrics are present and finite.
void validate_report(const AttackReport& r);

nlohmann::json report_to_json(const AttackReport& r);
AttackReport report_from_json(const nlohmann::json& j);

// Loss-trace/ROC export, "x,y" rows with full double precision.
std::string curve_to_csv(const AttackReport& r, const std::string& x_name,
                         const std::string& y_name);

}  // namespace priv::attacks
