#pragma once

#include <optional>
#include <string>

namespace priv::cli {

enum class Level { low, medium, high };

const char* level_name(Level v);
Level parse_level(const std::string& s);

// Fixed sensitivity x exposure matrix; symmetric, defined on all nine cells.
Level risk_score(Level sensitivity, Level exposure);

struct ExposureThresholds {
  double auc_high = 0.75;        // MIA AUC at or above: high exposure
  double auc_medium = 0.60;      // at or above (left-closed): medium
  double extraction_high = 0.0;  // extraction rate strictly above: high

  void validate() const;

  bool operator==(const ExposureThresholds&) const = default;
};

struct ExposureInputs {
  std::optional<double> mia_auc;
  std::optional<double> extraction_rate;
};

struct ExposureOutcome {
  Level exposure = Level::low;
  bool partial = false;  // some expected attack reports were unavailable

  bool operator==(const ExposureOutcome&) const = default;
};

// Worst signal wins: extraction beats AUC, high beats medium. Missing
// reports lower nothing; they only set the partial flag.
ExposureOutcome exposure_from_attacks(const ExposureInputs& in, const ExposureThresholds& th);

}  // namespace priv::cli
