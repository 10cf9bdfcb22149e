#include "priv/gw/embed.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "priv/errors.hpp"
#include "priv/gw/preprocess.hpp"
#include "priv/pii/detect.hpp"
#include "priv/rng.hpp"

namespace priv::gw {

namespace {

std::uint64_t trigram_hash(const char* p) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the three bytes
  for (int i = 0; i < 3; ++i) {
    h ^= static_cast<unsigned char>(p[i]);
    h *= 0x100000001b3ull;
  }
  std::uint64_t mixed = h ^ kEmbedHashSeed;
  return splitmix64(mixed);
}

}  // namespace

std::vector<double> embed(const std::string& normalized_text) {
  std::vector<double> v(kEmbedDim, 0.0);
  if (normalized_text.size() < 3) {
    v[0] = 1.0;
    return v;
  }
  for (std::size_t i = 0; i + 3 <= normalized_text.size(); ++i) {
    v[trigram_hash(normalized_text.data() + i) % kEmbedDim] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    v[0] = 1.0;
    return v;
  }
  for (double& x : v) x /= norm;
  return v;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("cosine of mismatched dimensions");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::clamp(dot, -1.0, 1.0);
}

void VectorStore::put(const std::string& doc_id, const std::string& text) {
  if (doc_id.empty()) throw FormatError("doc_id must be non-empty");
  const Preprocessed pp = preprocess(text);
  if (!pii::detect(pp.text).empty()) {
    throw InvariantError("document contains unredacted PII; index refuses it");
  }
  DocEntry entry{doc_id, pp.text, embed(pp.text)};
  std::unique_lock lock(mu_);
  docs_[doc_id] = std::move(entry);
}

KnnResult VectorStore::knn(const std::string& query_text, std::size_t k) const {
  const std::vector<double> q = embed(preprocess(query_text).text);
  KnnResult result;
  std::shared_lock lock(mu_);
  result.hits.reserve(docs_.size());
  for (const auto& [id, doc] : docs_) {
    result.hits.push_back({id, cosine(q, doc.embedding)});
  }
  lock.unlock();
  std::sort(result.hits.begin(), result.hits.end(), [](const KnnHit& a, const KnnHit& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    return a.doc_id < b.doc_id;
  });
  if (k < result.hits.size()) {
    result.hits.resize(k);
  } else if (k > result.hits.size()) {
    result.truncated = true;
  }
  return result;
}

std::size_t VectorStore::size() const {
  std::shared_lock lock(mu_);
  return docs_.size();
}

std::optional<DocEntry> VectorStore::get(const std::string& doc_id) const {
  std::shared_lock lock(mu_);
  auto it = docs_.find(doc_id);
  if (it == docs_.end()) return std::nullopt;
  return it->second;
}

std::vector<DocEntry> VectorStore::entries() const {
  std::shared_lock lock(mu_);
  std::vector<DocEntry> out;
  out.reserve(docs_.size());
  for (const auto& [id, doc] : docs_) out.push_back(doc);
  return out;
}

}  // namespace priv::gw
