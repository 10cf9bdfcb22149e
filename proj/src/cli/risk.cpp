#include "priv/cli/risk.hpp"

#include "priv/errors.hpp"

namespace priv::cli {

const char* level_name(Level v) {
  switch (v) {
    case Level::low: return "low";
    case Level::medium: return "medium";
    case Level::high: return "high";
  }
  return "low";
}

Level parse_level(const std::string& s) {
  if (s == "low") return Level::low;
  if (s == "medium") return Level::medium;
  if (s == "high") return Level::high;
  throw FormatError("unknown level: " + s);
}

Level risk_score(Level sensitivity, Level exposure) {
  static constexpr Level table[3][3] = {
      // exposure:   low            medium         high
      {Level::low, Level::low, Level::medium},     // sensitivity low
      {Level::low, Level::medium, Level::high},    // sensitivity medium
      {Level::medium, Level::high, Level::high},   // sensitivity high
  };
  return table[static_cast<int>(sensitivity)][static_cast<int>(exposure)];
}

void ExposureThresholds::validate() const {
  if (!(auc_medium <= auc_high)) {
    throw FormatError("exposure thresholds: auc_medium must not exceed auc_high");
  }
  if (extraction_high < 0.0) {
    throw FormatError("exposure thresholds: extraction_high must be non-negative");
  }
}

ExposureOutcome exposure_from_attacks(const ExposureInputs& in, const ExposureThresholds& th) {
  th.validate();
  ExposureOutcome out;
  out.partial = !in.mia_auc.has_value() || !in.extraction_rate.has_value();
  if (in.extraction_rate && *in.extraction_rate > th.extraction_high) {
    out.exposure = Level::high;
    return out;
  }
  if (in.mia_auc) {
    if (*in.mia_auc >= th.auc_high) {
      out.exposure = Level::high;
    } else if (*in.mia_auc >= th.auc_medium) {
      out.exposure = Level::medium;
    }
  }
  return out;
}

}  // namespace priv::cli
