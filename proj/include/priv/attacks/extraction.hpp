#pragma once

#include <cstdint>
#include <string>

#include "priv/attacks/report.hpp"

namespace priv::attacks {

inline constexpr std::size_t kExtractionDecoys = 100;

// Inserts `text` at `repetitions` distinct seeded word boundaries of corpus.
std::string insert_repeated(const std::string& corpus, const std::string& text,
                            std::size_t repetitions, std::uint64_t seed);

// Scores an already-built training corpus: trains the n-gram model, prompts
// with the canary's first prefix_len bytes, and measures how much of the
// secret suffix comes back verbatim plus the true secret's likelihood rank
// among seeded same-shape decoys. Defended runs pass a redacted corpus
// through this same path.
AttackReport extraction_score(const std::string& training_corpus, const std::string& canary,
                              std::size_t prefix_len, std::size_t order, std::uint64_t seed,
                              bool defended);

// Standard experiment: seed the canary into the corpus, then score.
AttackReport extraction_run(const std::string& corpus, const std::string& canary,
                            std::size_t repetitions, std::size_t prefix_len, std::size_t order,
                            std::uint64_t seed);

}  // namespace priv::attacks
