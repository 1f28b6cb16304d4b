#pragma once

#include <string>
#include <vector>

namespace cdoc {

// D = {d}: keyed documents for lexical retrieval.
struct Corpus {
  std::vector<std::pair<std::string, std::string>> docs;  // (doc_key, text)

  void add(std::string key, std::string text);
};

// Lowercase alphanumeric word tokens.
std::vector<std::string> tokenize(const std::string& text);

// tf-idf cosine against the query. Document frequencies are computed over
// distinct document texts so exact duplicates cannot shift anyone's score.
// idf(t) = ln((1 + N) / (1 + df(t))) + 1.
double relevance_score(const std::string& query_text, const std::string& doc_text,
                       const Corpus& corpus);

// Top-k doc keys by score, descending; ties broken by doc_key ascending.
// Returns fewer than k when the corpus is smaller; empty corpus -> empty.
std::vector<std::string> retrieve(const std::string& query_text, const Corpus& corpus,
                                  int k);

}  // namespace cdoc
