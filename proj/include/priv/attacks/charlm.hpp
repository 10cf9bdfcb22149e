#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace priv::attacks {

/// Character n-gram model: counts of next byte per (order-1)-byte context.
/// Memorizes by construction, which is exactly what the extraction experiment
/// needs from it.
struct CharLm {
  std::size_t order = 0;
  std::map<std::string, std::map<unsigned char, std::uint32_t>> counts;
};

inline constexpr std::size_t kMinOrder = 2;
inline constexpr std::size_t kMaxOrder = 8;

CharLm charlm_train(const std::string& corpus, std::size_t order);

// Greedy decoding: append the argmax next byte (ties break to the lowest byte
// value) until max_len bytes or an unseen context. Prefix must supply at
// least order-1 bytes of context.
std::string charlm_complete(const CharLm& lm, const std::string& prefix, std::size_t max_len);

// Add-one-smoothed log-likelihood of `continuation` given `context` as the
// preceding text. Smoothing is over the full 256-byte alphabet, so unseen
// contexts score log(1/256) per byte.
double charlm_loglik(const CharLm& lm, const std::string& context,
                     const std::string& continuation);

}  // namespace priv::attacks
