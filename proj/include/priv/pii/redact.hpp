#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "priv/pii/detect.hpp"

namespace priv::pii {

class Vault;

enum class Action { mask, pseudonymize, generalize, allow };

const char* action_name(Action a);
Action parse_action(const std::string& s);

struct RedactionPolicy {
  std::map<Kind, Action> actions;
  std::vector<double> age_buckets{18, 30, 40, 50, 65, 90};
  std::vector<double> income_buckets{10000, 25000, 50000, 75000, 100000, 150000, 200000};

  // Every kind must have exactly one action; bucket edges strictly increasing.
  void validate() const;

  static RedactionPolicy uniform(Action a);
};

nlohmann::json policy_to_json(const RedactionPolicy& p);
RedactionPolicy policy_from_json(const nlohmann::json& j);

struct AppliedAction {
  Kind kind;
  Action action;
  std::size_t start = 0;  // offsets in the original text
  std::size_t end = 0;
  std::string original;
  std::string replacement;

  bool operator==(const AppliedAction&) const = default;
};

struct RedactionResult {
  std::string text;
  std::vector<AppliedAction> actions;
};

std::string mask_tag(Kind k);

// Bucket label for the half-open bin [lo, hi) containing value; "<lo" below
// the first edge, "≥hi" at or above the last.
std::string generalize_numeric(double value, const std::vector<double>& edges);

// Applies the policy to the given spans, replacing right to left so earlier
// offsets stay valid. vault may be null only if no span needs pseudonymize;
// otherwise StateError (the text must never fall through unprotected).
RedactionResult redact(const std::string& text, const std::vector<PiiSpan>& spans,
                       const RedactionPolicy& policy, Vault* vault);

// detect + redact in one step.
RedactionResult redact_text(const std::string& text, const RedactionPolicy& policy, Vault* vault);

}  // namespace priv::pii
