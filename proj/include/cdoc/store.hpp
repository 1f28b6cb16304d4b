#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cdoc {

enum class ParsingStatus { pending, parsed, failed };

std::string to_string(ParsingStatus status);
ParsingStatus parsing_status_from_string(const std::string& s);

struct DocumentRow {
  std::string doc_id;
  std::string source;
  ParsingStatus parsing_status = ParsingStatus::pending;
  std::int64_t ingested_at = 0;  // caller-supplied; the store never samples time
};

struct ParameterRow {
  std::string param_id;
  std::string doc_id;
  std::string name;
  double value = 0.0;
  std::string unit;
  std::string source_block;
};

struct LayoutRow {
  std::string layout_id;
  std::string doc_id;
  std::string category;
  int page = 1;
  double bbox[4] = {0, 0, 0, 0};
};

struct TopologyRow {
  std::string topo_id;
  std::string doc_id;
  std::vector<std::string> nodes;
  std::vector<std::string> component_list;
  std::vector<std::pair<std::string, std::string>> connections;  // (component, node)
  std::string netlist_text;
};

struct ImageRow {
  std::string image_id;
  std::string doc_id;
  std::string image_type;
  double region_bbox[4] = {0, 0, 0, 0};
  std::string caption;
  std::string blob_ref;  // content digest; must resolve in the blob directory
};

struct LabelRow {
  std::string label_id;
  std::string target_table;  // one of the six table names
  std::string target_key;
  std::string content;
};

// Single-file row store with an append journal and full-file compaction.
// Writes are serialized by the caller (the CLI holds an advisory lock);
// concurrent readers against a quiescent file are safe.
class Store {
 public:
  // In-memory store; nothing is persisted.
  Store();
  // File-backed: loads `path` plus its journal if present. Blobs live in
  // the content-addressed directory `<path>.blobs/`.
  explicit Store(std::string path);

  // put replaces atomically on key collision and returns the key.
  // Dangling foreign keys raise IntegrityError naming the missing key.
  std::string put(const DocumentRow& row);
  std::string put(const ParameterRow& row);
  std::string put(const LayoutRow& row);
  std::string put(const TopologyRow& row);
  std::string put(const ImageRow& row);
  std::string put(const LabelRow& row);

  std::optional<DocumentRow> get_document(const std::string& key) const;
  std::optional<ParameterRow> get_parameter(const std::string& key) const;
  std::optional<LayoutRow> get_layout(const std::string& key) const;
  std::optional<TopologyRow> get_topology(const std::string& key) const;
  std::optional<ImageRow> get_image(const std::string& key) const;
  std::optional<LabelRow> get_label(const std::string& key) const;

  // All rows for doc_id whose name matches the glob pattern, name ascending.
  std::vector<ParameterRow> query_params(const std::string& doc_id,
                                         const std::string& name_pattern) const;
  std::vector<LayoutRow> query_layouts(const std::string& doc_id) const;
  std::vector<LabelRow> query_labels(const std::string& target_table,
                                     const std::string& target_key) const;

  // Byte-stable JSON bundle of all six tables filtered to one document.
  std::string export_training_view(const std::string& doc_id) const;

  // Stores bytes under their digest and returns the blob_ref.
  std::string put_blob(const std::string& bytes);
  std::optional<std::string> read_blob(const std::string& blob_ref) const;

  // Rewrites the base file from current state and truncates the journal.
  void compact();

  size_t size() const;

 private:
  void journal_append(const std::string& table, const std::string& row_json);
  void ensure_doc(const std::string& doc_id, const std::string& referer) const;

  std::string path_;
  std::map<std::string, DocumentRow> documents_;
  std::map<std::string, ParameterRow> parameters_;
  std::map<std::string, LayoutRow> layouts_;
  std::map<std::string, TopologyRow> topologies_;
  std::map<std::string, ImageRow> images_;
  std::map<std::string, LabelRow> labels_;
  std::map<std::string, std::string> blob_cache_;  // in-memory stores only
};

}  // namespace cdoc
