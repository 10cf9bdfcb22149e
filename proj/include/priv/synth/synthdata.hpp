#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "priv/nn/matrix.hpp"
#include "priv/pii/kinds.hpp"

namespace priv::synth {

struct Record {
  std::uint64_t id = 0;
  std::string name;
  std::string email;
  std::string ssn;          // ddd-dd-dddd
  std::string credit_card;  // 16 digits, Luhn-valid
  std::string phone;
  int age = 0;        // [18, 90]
  double income = 0;  // [10000, 200000]
  int gender = 0;     // {0, 1}
  int condition = 0;  // binary label

  bool operator==(const Record&) const = default;
};

// Fixed generator ranges, stored so train/holdout share one exact transform.
struct Bounds {
  double age_min = 18.0;
  double age_max = 90.0;
  double income_min = 10000.0;
  double income_max = 200000.0;

  double norm_age(double age) const { return (age - age_min) / (age_max - age_min); }
  double norm_income(double inc) const { return (inc - income_min) / (income_max - income_min); }
  double denorm_age(double v) const { return age_min + v * (age_max - age_min); }
  double denorm_income(double v) const { return income_min + v * (income_max - income_min); }
};

struct Dataset {
  std::vector<Record> records;
  Bounds bounds;

  // Columns: age_norm, income_norm, gender.
  nn::Matrix feature_view() const;
  nn::Matrix label_view() const;
};

inline constexpr std::size_t kFeatureCount = 3;

// Logistic ground-truth label rule; gives models real signal to learn.
double p_cond(double age_norm, double income_norm);

// Record i depends only on (seed, i), so prefixes agree across sizes.
Record make_record(std::uint64_t seed, std::uint64_t id);
Dataset generate(std::size_t n, std::uint64_t seed);

// Standard mod-10 validity over 12-19 ASCII digits.
bool luhn_checksum(const std::string& digits);

struct GroundSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open
  pii::Kind kind = pii::Kind::name;
  std::string value;

  bool operator==(const GroundSpan&) const = default;
};

struct RenderedDoc {
  std::string text;
  std::vector<GroundSpan> spans;
};

std::size_t template_count();
RenderedDoc render_text(const Record& r, std::size_t template_id);

struct SplitResult {
  Dataset train;
  Dataset holdout;
};

// Seeded shuffle, floor(fraction * n) rows on the train side, both sides kept
// in ascending-id order. Errors if either side would be empty.
SplitResult split(const Dataset& ds, double train_fraction, std::uint64_t seed);

void export_jsonl(const Dataset& ds, std::ostream& os);
Dataset import_jsonl(std::istream& is);
void export_feature_csv(const Dataset& ds, std::ostream& os);

}  // namespace priv::synth
