#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace priv::gw {

constexpr std::size_t kEmbedDim = 256;

// Published hash seed: embeddings are a stable external artifact.
constexpr std::uint64_t kEmbedHashSeed = 0x9E3779B97F4A7C15ull;

// Hashed character-trigram counts over the input bytes, folded into
// kEmbedDim bins and L2-normalized. Texts shorter than one trigram map to
// the fixed basis vector e0.
std::vector<double> embed(const std::string& normalized_text);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

struct DocEntry {
  std::string doc_id;
  std::string text;  // stored post-redaction only
  std::vector<double> embedding;
};

struct KnnHit {
  std::string doc_id;
  double cosine = 0.0;

  bool operator==(const KnnHit&) const = default;
};

struct KnnResult {
  std::vector<KnnHit> hits;    // sorted by cosine desc, ties by lower doc_id
  bool truncated = false;      // k exceeded the store size
};

// Exact brute-force cosine index. put() runs the PII detector and rejects
// text with unredacted spans, so raw PII cannot enter the index.
class VectorStore {
 public:
  // Normalizes text, verifies it carries no detectable PII, and upserts.
  void put(const std::string& doc_id, const std::string& text);

  KnnResult knn(const std::string& query_text, std::size_t k) const;

  std::size_t size() const;
  std::optional<DocEntry> get(const std::string& doc_id) const;
  std::vector<DocEntry> entries() const;  // snapshot copy

 private:
  std::map<std::string, DocEntry> docs_;
  mutable std::shared_mutex mu_;
};

}  // namespace priv::gw
