#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdoc/retrieval.hpp"

namespace cdoc {

struct Query {
  std::string text;

  explicit Query(std::string t);
};

// Abstract text generator. Implementations must be deterministic for a
// given prompt once a seed is configured.
class GeneratorClient {
 public:
  virtual ~GeneratorClient() = default;
  virtual std::string generate(const std::string& prompt) = 0;
};

// Replays responses from a transcript file. Entries may pin the exact
// prompt they answer; a mismatch or an exhausted transcript is a
// GeneratorError. Transcript schema:
//   {"entries": [{"prompt": "...(optional)", "text": "..."}, ...]}
class ScriptedGenerator : public GeneratorClient {
 public:
  struct Entry {
    std::optional<std::string> expected_prompt;
    std::string text;
  };

  explicit ScriptedGenerator(std::vector<Entry> entries);
  static ScriptedGenerator from_json(const std::string& json_text);

  std::string generate(const std::string& prompt) override;

  int calls() const { return calls_; }
  const std::vector<std::string>& prompts_seen() const { return prompts_seen_; }

 private:
  std::vector<Entry> entries_;
  std::vector<std::string> prompts_seen_;
  int calls_ = 0;
};

// Fixed template; docs joined by blank lines in rank order.
std::string build_prompt(const std::vector<std::string>& doc_texts,
                         const std::string& query_text);

// Retrieval query for iteration t: y_{t-1} '\n' q (q alone when y_prev empty).
std::string concat_query(const std::string& y_prev, const std::string& query_text);

struct IroStepResult {
  std::string output;                  // y_t
  std::vector<std::string> retrieved;  // doc keys, rank order
  std::string retrieval_query;
  std::string prompt;
};

IroStepResult iro_step(const Query& q, const std::string& y_prev, const Corpus& corpus,
                       GeneratorClient& gen, int k);

struct IroState {
  int t = 0;        // iterations completed
  int max_iters = 0;
  std::vector<std::string> outputs;                    // y_1..y_t
  std::vector<std::vector<std::string>> retrieved;     // per iteration
  std::vector<std::string> retrieval_queries;
  std::vector<std::string> prompts;
  bool early_stopped = false;

  const std::string& final_output() const { return outputs.back(); }
};

// Runs up to T iterations; stops early when y_t == y_{t-1} (a deterministic
// generator would only repeat itself from there on).
IroState iro_run(const Query& q, const Corpus& corpus, GeneratorClient& gen, int max_iters,
                 int k);

inline constexpr int kDefaultIroIterations = 3;
inline constexpr int kDefaultRetrievalK = 4;

}  // namespace cdoc
