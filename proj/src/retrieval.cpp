#include "cdoc/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

std::map<std::string, double> term_counts(const std::string& text) {
  std::map<std::string, double> counts;
  for (const auto& token : tokenize(text)) counts[token] += 1.0;
  return counts;
}

// df over distinct texts; duplicate documents must not inflate rarity stats.
std::unordered_map<std::string, int> document_frequencies(const Corpus& corpus,
                                                          int& distinct_docs) {
  std::unordered_set<std::string> seen_texts;
  std::unordered_map<std::string, int> df;
  distinct_docs = 0;
  for (const auto& [key, text] : corpus.docs) {
    if (!seen_texts.insert(text).second) continue;
    ++distinct_docs;
    std::unordered_set<std::string> terms;
    for (const auto& token : tokenize(text)) terms.insert(token);
    for (const auto& t : terms) df[t] += 1;
  }
  return df;
}

double idf(int df_t, int n_docs) {
  return std::log((1.0 + n_docs) / (1.0 + df_t)) + 1.0;
}

double cosine(const std::map<std::string, double>& a,
              const std::map<std::string, double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [t, w] : a) {
    na += w * w;
    auto it = b.find(t);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : b) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

void Corpus::add(std::string key, std::string text) {
  for (const auto& [existing, _] : docs)
    if (existing == key) throw ParseError("corpus: duplicate doc_key '" + key + "'");
  docs.emplace_back(std::move(key), std::move(text));
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double relevance_score(const std::string& query_text, const std::string& doc_text,
                       const Corpus& corpus) {
  int n_docs = 0;
  const auto df = document_frequencies(corpus, n_docs);
  auto weigh = [&](std::map<std::string, double> counts) {
    for (auto& [t, w] : counts) {
      auto it = df.find(t);
      w *= idf(it == df.end() ? 0 : it->second, n_docs);
    }
    return counts;
  };
  return cosine(weigh(term_counts(query_text)), weigh(term_counts(doc_text)));
}

std::vector<std::string> retrieve(const std::string& query_text, const Corpus& corpus,
                                  int k) {
  if (k < 1) throw DomainError("retrieve: k must be >= 1");
  if (corpus.docs.empty()) return {};

  int n_docs = 0;
  const auto df = document_frequencies(corpus, n_docs);
  auto weigh = [&](std::map<std::string, double> counts) {
    for (auto& [t, w] : counts) {
      auto it = df.find(t);
      w *= idf(it == df.end() ? 0 : it->second, n_docs);
    }
    return counts;
  };

  const auto query_vec = weigh(term_counts(query_text));
  std::vector<std::pair<double, std::string>> scored;
  scored.reserve(corpus.docs.size());
  for (const auto& [key, text] : corpus.docs)
    scored.emplace_back(cosine(query_vec, weigh(term_counts(text))), key);

  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  const size_t take = std::min<size_t>(static_cast<size_t>(k), scored.size());
  std::vector<std::string> keys;
  keys.reserve(take);
  for (size_t i = 0; i < take; ++i) keys.push_back(scored[i].second);
  return keys;
}

}  // namespace cdoc
