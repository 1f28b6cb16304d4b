#include "cdoc/iro.hpp"

#include <json.hpp>

#include "cdoc/errors.hpp"

namespace cdoc {

using nlohmann::json;

Query::Query(std::string t) : text(std::move(t)) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("query: empty after trim");
}

ScriptedGenerator::ScriptedGenerator(std::vector<Entry> entries)
    : entries_(std::move(entries)) {}

ScriptedGenerator ScriptedGenerator::from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("transcript: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw ParseError("transcript: expected {\"entries\": [...]}");
  std::vector<Entry> entries;
  for (const auto& item : doc["entries"]) {
    Entry e;
    if (item.contains("prompt")) e.expected_prompt = item["prompt"].get<std::string>();
    if (!item.contains("text") || !item["text"].is_string())
      throw ParseError("transcript: entry missing string field 'text'");
    e.text = item["text"].get<std::string>();
    entries.push_back(std::move(e));
  }
  return ScriptedGenerator(std::move(entries));
}

std::string ScriptedGenerator::generate(const std::string& prompt) {
  if (static_cast<size_t>(calls_) >= entries_.size())
    throw GeneratorError("scripted generator: transcript exhausted after " +
                         std::to_string(calls_) + " calls");
  const Entry& e = entries_[static_cast<size_t>(calls_)];
  if (e.expected_prompt && *e.expected_prompt != prompt)
    throw GeneratorError("scripted generator: prompt mismatch at call " +
                         std::to_string(calls_ + 1));
  ++calls_;
  prompts_seen_.push_back(prompt);
  return e.text;
}

std::string build_prompt(const std::vector<std::string>& doc_texts,
                         const std::string& query_text) {
  std::string docs;
  for (size_t i = 0; i < doc_texts.size(); ++i) {
    if (i > 0) docs += "\n\n";
    docs += doc_texts[i];
  }
  return "Context:\n" + docs + "\n\nQuestion: " + query_text + "\nAnswer:";
}

std::string concat_query(const std::string& y_prev, const std::string& query_text) {
  if (y_prev.empty()) return query_text;
  return y_prev + "\n" + query_text;
}

IroStepResult iro_step(const Query& q, const std::string& y_prev, const Corpus& corpus,
                       GeneratorClient& gen, int k) {
  IroStepResult result;
  result.retrieval_query = concat_query(y_prev, q.text);
  result.retrieved = retrieve(result.retrieval_query, corpus, k);

  std::vector<std::string> doc_texts;
  doc_texts.reserve(result.retrieved.size());
  for (const auto& key : result.retrieved) {
    for (const auto& [doc_key, text] : corpus.docs) {
      if (doc_key == key) {
        doc_texts.push_back(text);
        break;
      }
    }
  }
  result.prompt = build_prompt(doc_texts, q.text);
  result.output = gen.generate(result.prompt);
  return result;
}

IroState iro_run(const Query& q, const Corpus& corpus, GeneratorClient& gen, int max_iters,
                 int k) {
  if (max_iters < 1) throw DomainError("iro_run: max_iters must be >= 1");
  IroState state;
  state.max_iters = max_iters;
  std::string y_prev;
  for (int t = 1; t <= max_iters; ++t) {
    IroStepResult step;
    try {
      step = iro_step(q, y_prev, corpus, gen, k);
    } catch (const GeneratorError& e) {
      throw GeneratorError("iteration " + std::to_string(t) + ": " + e.what());
    }
    state.t = t;
    state.outputs.push_back(step.output);
    state.retrieved.push_back(step.retrieved);
    state.retrieval_queries.push_back(step.retrieval_query);
    state.prompts.push_back(step.prompt);
    if (t > 1 && step.output == y_prev) {
      state.early_stopped = true;
      break;
    }
    y_prev = step.output;
  }
  return state;
}

}  // namespace cdoc
