#include "priv/attacks/extraction.hpp"

#include <algorithm>
#include <cctype>

#include "priv/attacks/charlm.hpp"
#include "priv/errors.hpp"
#include "priv/rng.hpp"

namespace priv::attacks {

std::string insert_repeated(const std::string& corpus, const std::string& text,
                            std::size_t repetitions, std::uint64_t seed) {
  if (repetitions == 0) return corpus;
  std::vector<std::size_t> boundaries;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i] == ' ') boundaries.push_back(i + 1);  // insert after a space
  }
  if (boundaries.size() < repetitions) {
    throw FormatError("insert_repeated: corpus has too few word boundaries");
  }
  Rng rng(seed);
  rng.shuffle(boundaries);
  boundaries.resize(repetitions);
  std::sort(boundaries.rbegin(), boundaries.rend());  // splice back-to-front
  std::string out = corpus;
  for (std::size_t pos : boundaries) out.insert(pos, text + " ");
  return out;
}

namespace {

// Decoy with the true secret's shape: digits stay digits, letters stay
// letters of the same case, everything else is copied.
std::string shaped_decoy(const std::string& secret, Rng& rng) {
  std::string out = secret;
  for (char& c : out) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isdigit(u)) {
      c = static_cast<char>('0' + rng.below(10));
    } else if (std::islower(u)) {
      c = static_cast<char>('a' + rng.below(26));
    } else if (std::isupper(u)) {
      c = static_cast<char>('A' + rng.below(26));
    }
  }
  return out;
}

std::size_t common_prefix_len(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

AttackReport extraction_score(const std::string& training_corpus, const std::string& canary,
                              std::size_t prefix_len, std::size_t order, std::uint64_t seed,
                              bool defended) {
  if (canary.size() <= prefix_len) {
    throw FormatError("extraction: canary not longer than prefix_len");
  }
  if (prefix_len < order - 1) {
    throw FormatError("extraction: prefix_len must supply order-1 context bytes");
  }
  const std::string prefix = canary.substr(0, prefix_len);
  const std::string secret = canary.substr(prefix_len);

  const CharLm lm = charlm_train(training_corpus, order);
  const std::string completion = charlm_complete(lm, prefix, secret.size());
  const double rate = static_cast<double>(common_prefix_len(completion, secret)) /
                      static_cast<double>(secret.size());

  const double true_ll = charlm_loglik(lm, prefix, secret);
  std::size_t beaten_by = 0;
  Rng decoy_rng(counter_mix(seed, 0x6465636fULL));
  for (std::size_t i = 0; i < kExtractionDecoys; ++i) {
    if (charlm_loglik(lm, prefix, shaped_decoy(secret, decoy_rng)) > true_ll) ++beaten_by;
  }

  AttackReport r;
  r.kind = AttackKind::extraction;
  r.seed = seed;
  r.defended = defended;
  r.config = {{"order", std::to_string(order)},
              {"prefix_len", std::to_string(prefix_len)},
              {"decoys", std::to_string(kExtractionDecoys)}};
  r.metrics["extraction_rate"] = rate;
  r.metrics["canary_rank"] = static_cast<double>(1 + beaten_by);
  r.note = completion;
  validate_report(r);
  return r;
}

AttackReport extraction_run(const std::string& corpus, const std::string& canary,
                            std::size_t repetitions, std::size_t prefix_len, std::size_t order,
                            std::uint64_t seed) {
  const std::string training = insert_repeated(corpus, canary, repetitions, seed);
  AttackReport r = extraction_score(training, canary, prefix_len, order, seed, false);
  r.config["repetitions"] = std::to_string(repetitions);
  return r;
}

}  // namespace priv::attacks
