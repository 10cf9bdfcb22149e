#include "priv/attacks/charlm.hpp"

#include <cmath>

#include "priv/errors.hpp"

namespace priv::attacks {

CharLm charlm_train(const std::string& corpus, std::size_t order) {
  if (order < kMinOrder || order > kMaxOrder) {
    throw FormatError("charlm_train: order must be in [2, 8]");
  }
  if (corpus.size() <= order) throw FormatError("charlm_train: corpus shorter than order");
  CharLm lm;
  lm.order = order;
  const std::size_t ctx_len = order - 1;
  for (std::size_t i = ctx_len; i < corpus.size(); ++i) {
    lm.counts[corpus.substr(i - ctx_len, ctx_len)][static_cast<unsigned char>(corpus[i])]++;
  }
  return lm;
}

std::string charlm_complete(const CharLm& lm, const std::string& prefix, std::size_t max_len) {
  const std::size_t ctx_len = lm.order - 1;
  if (prefix.size() < ctx_len) throw FormatError("charlm_complete: prefix shorter than context");
  std::string ctx = prefix.substr(prefix.size() - ctx_len);
  std::string out;
  while (out.size() < max_len) {
    const auto it = lm.counts.find(ctx);
    if (it == lm.counts.end()) break;
    unsigned char best = 0;
    std::uint32_t best_count = 0;
    for (const auto& [byte, count] : it->second) {
      if (count > best_count) {  // map order makes the first max the lowest byte
        best = byte;
        best_count = count;
      }
    }
    out += static_cast<char>(best);
    ctx = ctx.substr(1) + static_cast<char>(best);
  }
  return out;
}

double charlm_loglik(const CharLm& lm, const std::string& context,
                     const std::string& continuation) {
  const std::size_t ctx_len = lm.order - 1;
  if (context.size() < ctx_len) throw FormatError("charlm_loglik: context shorter than order-1");
  std::string text = context + continuation;
  double ll = 0.0;
  for (std::size_t i = context.size(); i < text.size(); ++i) {
    const std::string ctx = text.substr(i - ctx_len, ctx_len);
    const unsigned char next = static_cast<unsigned char>(text[i]);
    double count = 1.0, total = 256.0;
    const auto it = lm.counts.find(ctx);
    if (it != lm.counts.end()) {
      for (const auto& [byte, c] : it->second) {
        total += c;
        if (byte == next) count += c;
      }
    }
    ll += std::log(count / total);
  }
  return ll;
}

}  // namespace priv::attacks
