#include "priv/pii/redact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "priv/errors.hpp"
#include "priv/pii/vault.hpp"

namespace priv::pii {

namespace {

std::string format_edge(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void check_spans(const std::string& text, const std::vector<PiiSpan>& spans) {
  std::size_t prev_end = 0;
  for (const PiiSpan& s : spans) {
    if (s.start >= s.end || s.end > text.size()) {
      throw ShapeError("span offsets out of range");
    }
    if (s.start < prev_end) throw ShapeError("spans overlap or are unsorted");
    if (text.compare(s.start, s.end - s.start, s.value) != 0) {
      throw FormatError("span value does not match text");
    }
    prev_end = s.end;
  }
}

}  // namespace

const char* action_name(Action a) {
  switch (a) {
    case Action::mask: return "mask";
    case Action::pseudonymize: return "pseudonymize";
    case Action::generalize: return "generalize";
    case Action::allow: return "allow";
  }
  return "mask";
}

Action parse_action(const std::string& s) {
  if (s == "mask") return Action::mask;
  if (s == "pseudonymize") return Action::pseudonymize;
  if (s == "generalize") return Action::generalize;
  if (s == "allow") return Action::allow;
  throw FormatError("unknown redaction action: " + s);
}

void RedactionPolicy::validate() const {
  for (Kind k : kAllKinds) {
    if (actions.find(k) == actions.end()) {
      throw FormatError(std::string("policy is missing an action for ") + kind_name(k));
    }
  }
  for (const std::vector<double>* edges : {&age_buckets, &income_buckets}) {
    if (edges->empty()) throw FormatError("bucket edges must be non-empty");
    for (std::size_t i = 1; i < edges->size(); ++i) {
      if (!((*edges)[i] > (*edges)[i - 1])) {
        throw FormatError("bucket edges must be strictly increasing");
      }
    }
  }
}

RedactionPolicy RedactionPolicy::uniform(Action a) {
  RedactionPolicy p;
  for (Kind k : kAllKinds) p.actions[k] = a;
  return p;
}

nlohmann::json policy_to_json(const RedactionPolicy& p) {
  p.validate();
  nlohmann::json actions;
  for (const auto& [kind, action] : p.actions) {
    actions[kind_name(kind)] = action_name(action);
  }
  return nlohmann::json{{"actions", actions},
                        {"age_buckets", p.age_buckets},
                        {"income_buckets", p.income_buckets}};
}

RedactionPolicy policy_from_json(const nlohmann::json& j) {
  RedactionPolicy p;
  try {
    p.actions.clear();
    for (const auto& [key, value] : j.at("actions").items()) {
      p.actions[parse_kind(key)] = parse_action(value.get<std::string>());
    }
    if (j.contains("age_buckets")) p.age_buckets = j.at("age_buckets").get<std::vector<double>>();
    if (j.contains("income_buckets")) {
      p.income_buckets = j.at("income_buckets").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad policy JSON: ") + e.what());
  }
  p.validate();
  return p;
}

std::string mask_tag(Kind k) { return std::string("[") + kind_name(k) + "]"; }

std::string generalize_numeric(double value, const std::vector<double>& edges) {
  if (edges.empty()) throw FormatError("bucket edges must be non-empty");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw FormatError("bucket edges must be strictly increasing");
  }
  if (value < edges.front()) return "<" + format_edge(edges.front());
  if (value >= edges.back()) return "≥" + format_edge(edges.back());
  std::size_t i = 0;
  while (i + 1 < edges.size() && value >= edges[i + 1]) ++i;
  return format_edge(edges[i]) + "–" + format_edge(edges[i + 1]);
}

RedactionResult redact(const std::string& text, const std::vector<PiiSpan>& spans,
                       const RedactionPolicy& policy, Vault* vault) {
  policy.validate();
  check_spans(text, spans);
  RedactionResult result;
  result.text = text;
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    const PiiSpan& s = *it;
    const Action action = policy.actions.at(s.kind);
    std::string replacement;
    switch (action) {
      case Action::mask:
        replacement = mask_tag(s.kind);
        break;
      case Action::pseudonymize:
        if (vault == nullptr) {
          throw StateError("pseudonymize requires a vault; refusing to pass text through");
        }
        replacement = vault->put(s.kind, s.value);
        break;
      case Action::generalize:
        // Detected kinds carry no numeric value to bucket; fall back to the tag.
        replacement = mask_tag(s.kind);
        break;
      case Action::allow:
        replacement = s.value;
        break;
    }
    if (action != Action::allow) {
      result.text.replace(s.start, s.end - s.start, replacement);
    }
    result.actions.push_back({s.kind, action, s.start, s.end, s.value, replacement});
  }
  std::reverse(result.actions.begin(), result.actions.end());
  return result;
}

RedactionResult redact_text(const std::string& text, const RedactionPolicy& policy,
                            Vault* vault) {
  return redact(text, detect(text), policy, vault);
}

}  // namespace priv::pii
