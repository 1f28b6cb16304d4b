#include "cdoc/store.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdoc/digest.hpp"
#include "cdoc/errors.hpp"
#include "cdoc/param_text.hpp"

namespace cdoc {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json to_json(const DocumentRow& r) {
  return json{{"doc_id", r.doc_id},
              {"source", r.source},
              {"parsing_status", to_string(r.parsing_status)},
              {"ingested_at", r.ingested_at}};
}

DocumentRow document_from_json(const json& j) {
  DocumentRow r;
  r.doc_id = j.at("doc_id").get<std::string>();
  r.source = j.value("source", std::string());
  r.parsing_status = parsing_status_from_string(j.value("parsing_status", "pending"));
  r.ingested_at = j.value("ingested_at", static_cast<std::int64_t>(0));
  return r;
}

json to_json(const ParameterRow& r) {
  return json{{"param_id", r.param_id}, {"doc_id", r.doc_id},
              {"name", r.name},         {"value", r.value},
              {"unit", r.unit},         {"source_block", r.source_block}};
}

ParameterRow parameter_from_json(const json& j) {
  ParameterRow r;
  r.param_id = j.at("param_id").get<std::string>();
  r.doc_id = j.at("doc_id").get<std::string>();
  r.name = j.value("name", std::string());
  r.value = j.value("value", 0.0);
  r.unit = j.value("unit", std::string());
  r.source_block = j.value("source_block", std::string());
  return r;
}

json to_json(const LayoutRow& r) {
  return json{{"layout_id", r.layout_id},
              {"doc_id", r.doc_id},
              {"category", r.category},
              {"page", r.page},
              {"bbox", {r.bbox[0], r.bbox[1], r.bbox[2], r.bbox[3]}}};
}

LayoutRow layout_from_json(const json& j) {
  LayoutRow r;
  r.layout_id = j.at("layout_id").get<std::string>();
  r.doc_id = j.at("doc_id").get<std::string>();
  r.category = j.value("category", std::string());
  r.page = j.value("page", 1);
  const auto& box = j.at("bbox");
  for (int i = 0; i < 4; ++i) r.bbox[i] = box.at(static_cast<size_t>(i)).get<double>();
  return r;
}

json to_json(const TopologyRow& r) {
  json connections = json::array();
  for (const auto& [component, node] : r.connections)
    connections.push_back({{"component", component}, {"node", node}});
  return json{{"topo_id", r.topo_id},
              {"doc_id", r.doc_id},
              {"nodes", r.nodes},
              {"component_list", r.component_list},
              {"connections", connections},
              {"netlist_text", r.netlist_text}};
}

TopologyRow topology_from_json(const json& j) {
  TopologyRow r;
  r.topo_id = j.at("topo_id").get<std::string>();
  r.doc_id = j.at("doc_id").get<std::string>();
  r.nodes = j.value("nodes", std::vector<std::string>());
  r.component_list = j.value("component_list", std::vector<std::string>());
  if (j.contains("connections"))
    for (const auto& c : j["connections"])
      r.connections.emplace_back(c.at("component").get<std::string>(),
                                 c.at("node").get<std::string>());
  r.netlist_text = j.value("netlist_text", std::string());
  return r;
}

json to_json(const ImageRow& r) {
  return json{{"image_id", r.image_id},
              {"doc_id", r.doc_id},
              {"image_type", r.image_type},
              {"region_bbox", {r.region_bbox[0], r.region_bbox[1], r.region_bbox[2],
                               r.region_bbox[3]}},
              {"caption", r.caption},
              {"blob_ref", r.blob_ref}};
}

ImageRow image_from_json(const json& j) {
  ImageRow r;
  r.image_id = j.at("image_id").get<std::string>();
  r.doc_id = j.at("doc_id").get<std::string>();
  r.image_type = j.value("image_type", std::string());
  const auto& box = j.at("region_bbox");
  for (int i = 0; i < 4; ++i)
    r.region_bbox[i] = box.at(static_cast<size_t>(i)).get<double>();
  r.caption = j.value("caption", std::string());
  r.blob_ref = j.value("blob_ref", std::string());
  return r;
}

json to_json(const LabelRow& r) {
  return json{{"label_id", r.label_id},
              {"target_table", r.target_table},
              {"target_key", r.target_key},
              {"content", r.content}};
}

LabelRow label_from_json(const json& j) {
  LabelRow r;
  r.label_id = j.at("label_id").get<std::string>();
  r.target_table = j.at("target_table").get<std::string>();
  r.target_key = j.at("target_key").get<std::string>();
  r.content = j.value("content", std::string());
  return r;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("store: cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("store: cannot write " + tmp.string());
    out << bytes;
  }
  fs::rename(tmp, path);
}

}  // namespace

std::string to_string(ParsingStatus status) {
  switch (status) {
    case ParsingStatus::pending: return "pending";
    case ParsingStatus::parsed: return "parsed";
    case ParsingStatus::failed: return "failed";
  }
  return "pending";
}

ParsingStatus parsing_status_from_string(const std::string& s) {
  if (s == "parsed") return ParsingStatus::parsed;
  if (s == "failed") return ParsingStatus::failed;
  if (s == "pending") return ParsingStatus::pending;
  throw ParseError("store: unknown parsing_status '" + s + "'");
}

Store::Store() = default;

Store::Store(std::string path) : path_(std::move(path)) {
  const fs::path base(path_);
  if (fs::exists(base)) {
    json doc;
    try {
      doc = json::parse(read_file(base));
    } catch (const json::parse_error& e) {
      throw ParseError("store: corrupt base file: " + std::string(e.what()));
    }
    for (const auto& j : doc.value("documents", json::array()))
      documents_[j.at("doc_id").get<std::string>()] = document_from_json(j);
    for (const auto& j : doc.value("parameters", json::array()))
      parameters_[j.at("param_id").get<std::string>()] = parameter_from_json(j);
    for (const auto& j : doc.value("layouts", json::array()))
      layouts_[j.at("layout_id").get<std::string>()] = layout_from_json(j);
    for (const auto& j : doc.value("topologies", json::array()))
      topologies_[j.at("topo_id").get<std::string>()] = topology_from_json(j);
    for (const auto& j : doc.value("images", json::array()))
      images_[j.at("image_id").get<std::string>()] = image_from_json(j);
    for (const auto& j : doc.value("labels", json::array()))
      labels_[j.at("label_id").get<std::string>()] = label_from_json(j);
  }
  const fs::path journal(path_ + ".journal");
  if (fs::exists(journal)) {
    std::istringstream in(read_file(journal));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      json entry;
      try {
        entry = json::parse(line);
      } catch (const json::parse_error&) {
        throw ParseError("store: corrupt journal line " + std::to_string(line_no));
      }
      const std::string table = entry.at("table").get<std::string>();
      const json& row = entry.at("row");
      if (table == "documents")
        documents_[row.at("doc_id").get<std::string>()] = document_from_json(row);
      else if (table == "parameters")
        parameters_[row.at("param_id").get<std::string>()] = parameter_from_json(row);
      else if (table == "layouts")
        layouts_[row.at("layout_id").get<std::string>()] = layout_from_json(row);
      else if (table == "topologies")
        topologies_[row.at("topo_id").get<std::string>()] = topology_from_json(row);
      else if (table == "images")
        images_[row.at("image_id").get<std::string>()] = image_from_json(row);
      else if (table == "labels")
        labels_[row.at("label_id").get<std::string>()] = label_from_json(row);
      else
        throw ParseError("store: journal references unknown table '" + table + "'");
    }
  }
}

void Store::journal_append(const std::string& table, const std::string& row_json) {
  if (path_.empty()) return;
  std::ofstream out(path_ + ".journal", std::ios::binary | std::ios::app);
  if (!out) throw ParseError("store: cannot append journal for " + path_);
  out << "{\"table\":\"" << table << "\",\"row\":" << row_json << "}\n";
  out.flush();
}

void Store::ensure_doc(const std::string& doc_id, const std::string& referer) const {
  if (!documents_.count(doc_id))
    throw IntegrityError(referer + ": missing document key '" + doc_id + "'");
}

std::string Store::put(const DocumentRow& row) {
  if (row.doc_id.empty()) throw IntegrityError("documents: empty key");
  documents_[row.doc_id] = row;
  journal_append("documents", to_json(row).dump());
  return row.doc_id;
}

std::string Store::put(const ParameterRow& row) {
  if (row.param_id.empty()) throw IntegrityError("parameters: empty key");
  if (!std::isfinite(row.value))
    throw IntegrityError("parameters: non-finite value for '" + row.param_id + "'");
  ensure_doc(row.doc_id, "parameters");
  parameters_[row.param_id] = row;
  journal_append("parameters", to_json(row).dump());
  return row.param_id;
}

std::string Store::put(const LayoutRow& row) {
  if (row.layout_id.empty()) throw IntegrityError("layouts: empty key");
  if (row.page < 1) throw IntegrityError("layouts: page must be >= 1");
  ensure_doc(row.doc_id, "layouts");
  layouts_[row.layout_id] = row;
  journal_append("layouts", to_json(row).dump());
  return row.layout_id;
}

std::string Store::put(const TopologyRow& row) {
  if (row.topo_id.empty()) throw IntegrityError("topologies: empty key");
  ensure_doc(row.doc_id, "topologies");
  for (const auto& [component, node] : row.connections) {
    if (std::find(row.component_list.begin(), row.component_list.end(), component) ==
        row.component_list.end())
      throw IntegrityError("topologies: connection references unlisted component '" +
                           component + "'");
    if (std::find(row.nodes.begin(), row.nodes.end(), node) == row.nodes.end())
      throw IntegrityError("topologies: connection references unlisted node '" + node +
                           "'");
  }
  topologies_[row.topo_id] = row;
  journal_append("topologies", to_json(row).dump());
  return row.topo_id;
}

std::string Store::put(const ImageRow& row) {
  if (row.image_id.empty()) throw IntegrityError("images: empty key");
  ensure_doc(row.doc_id, "images");
  const auto blob = read_blob(row.blob_ref);
  if (!blob)
    throw IntegrityError("images: blob_ref '" + row.blob_ref + "' does not resolve");
  if (sha256_hex(*blob) != row.blob_ref)
    throw IntegrityError("images: blob content does not match digest '" + row.blob_ref +
                         "'");
  images_[row.image_id] = row;
  journal_append("images", to_json(row).dump());
  return row.image_id;
}

std::string Store::put(const LabelRow& row) {
  if (row.label_id.empty()) throw IntegrityError("labels: empty key");
  bool exists = false;
  if (row.target_table == "documents") exists = documents_.count(row.target_key);
  else if (row.target_table == "parameters") exists = parameters_.count(row.target_key);
  else if (row.target_table == "layouts") exists = layouts_.count(row.target_key);
  else if (row.target_table == "topologies") exists = topologies_.count(row.target_key);
  else if (row.target_table == "images") exists = images_.count(row.target_key);
  else if (row.target_table == "labels") exists = labels_.count(row.target_key);
  else
    throw IntegrityError("labels: unknown target table '" + row.target_table + "'");
  if (!exists)
    throw IntegrityError("labels: missing target key '" + row.target_key + "' in " +
                         row.target_table);
  labels_[row.label_id] = row;
  journal_append("labels", to_json(row).dump());
  return row.label_id;
}

std::optional<DocumentRow> Store::get_document(const std::string& key) const {
  auto it = documents_.find(key);
  if (it == documents_.end()) return std::nullopt;
  return it->second;
}

std::optional<ParameterRow> Store::get_parameter(const std::string& key) const {
  auto it = parameters_.find(key);
  if (it == parameters_.end()) return std::nullopt;
  return it->second;
}

std::optional<LayoutRow> Store::get_layout(const std::string& key) const {
  auto it = layouts_.find(key);
  if (it == layouts_.end()) return std::nullopt;
  return it->second;
}

std::optional<TopologyRow> Store::get_topology(const std::string& key) const {
  auto it = topologies_.find(key);
  if (it == topologies_.end()) return std::nullopt;
  return it->second;
}

std::optional<ImageRow> Store::get_image(const std::string& key) const {
  auto it = images_.find(key);
  if (it == images_.end()) return std::nullopt;
  return it->second;
}

std::optional<LabelRow> Store::get_label(const std::string& key) const {
  auto it = labels_.find(key);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::vector<ParameterRow> Store::query_params(const std::string& doc_id,
                                              const std::string& name_pattern) const {
  std::vector<ParameterRow> rows;
  for (const auto& [key, row] : parameters_)
    if (row.doc_id == doc_id && name_matches(name_pattern, row.name)) rows.push_back(row);
  std::sort(rows.begin(), rows.end(), [](const ParameterRow& a, const ParameterRow& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.param_id < b.param_id;
  });
  return rows;
}

std::vector<LayoutRow> Store::query_layouts(const std::string& doc_id) const {
  std::vector<LayoutRow> rows;
  for (const auto& [key, row] : layouts_)
    if (row.doc_id == doc_id) rows.push_back(row);
  return rows;
}

std::vector<LabelRow> Store::query_labels(const std::string& target_table,
                                          const std::string& target_key) const {
  std::vector<LabelRow> rows;
  for (const auto& [key, row] : labels_)
    if (row.target_table == target_table && row.target_key == target_key)
      rows.push_back(row);
  return rows;
}

std::string Store::export_training_view(const std::string& doc_id) const {
  if (!documents_.count(doc_id))
    throw NotFoundError("export: unknown document '" + doc_id + "'");

  json bundle;
  bundle["documents"] = json::array();
  bundle["parameters"] = json::array();
  bundle["layouts"] = json::array();
  bundle["topologies"] = json::array();
  bundle["images"] = json::array();
  bundle["labels"] = json::array();

  bundle["documents"].push_back(to_json(documents_.at(doc_id)));
  for (const auto& [key, row] : parameters_)
    if (row.doc_id == doc_id) bundle["parameters"].push_back(to_json(row));
  for (const auto& [key, row] : layouts_)
    if (row.doc_id == doc_id) bundle["layouts"].push_back(to_json(row));
  for (const auto& [key, row] : topologies_)
    if (row.doc_id == doc_id) bundle["topologies"].push_back(to_json(row));
  for (const auto& [key, row] : images_)
    if (row.doc_id == doc_id) bundle["images"].push_back(to_json(row));

  auto doc_owns = [&](const std::string& table, const std::string& key) {
    if (table == "documents") return key == doc_id;
    if (table == "parameters") {
      auto it = parameters_.find(key);
      return it != parameters_.end() && it->second.doc_id == doc_id;
    }
    if (table == "layouts") {
      auto it = layouts_.find(key);
      return it != layouts_.end() && it->second.doc_id == doc_id;
    }
    if (table == "topologies") {
      auto it = topologies_.find(key);
      return it != topologies_.end() && it->second.doc_id == doc_id;
    }
    if (table == "images") {
      auto it = images_.find(key);
      return it != images_.end() && it->second.doc_id == doc_id;
    }
    return false;
  };
  for (const auto& [key, row] : labels_)
    if (doc_owns(row.target_table, row.target_key)) bundle["labels"].push_back(to_json(row));

  return bundle.dump(2) + "\n";
}

std::string Store::put_blob(const std::string& bytes) {
  const std::string digest = sha256_hex(bytes);
  if (path_.empty()) {
    blob_cache_[digest] = bytes;
    return digest;
  }
  const fs::path dir(path_ + ".blobs");
  fs::create_directories(dir);
  const fs::path file = dir / digest;
  if (!fs::exists(file)) write_file_atomic(file, bytes);
  return digest;
}

std::optional<std::string> Store::read_blob(const std::string& blob_ref) const {
  if (path_.empty()) {
    auto it = blob_cache_.find(blob_ref);
    if (it == blob_cache_.end()) return std::nullopt;
    return it->second;
  }
  const fs::path file = fs::path(path_ + ".blobs") / blob_ref;
  if (!fs::exists(file)) return std::nullopt;
  return read_file(file);
}

void Store::compact() {
  if (path_.empty()) return;
  json doc;
  doc["documents"] = json::array();
  doc["parameters"] = json::array();
  doc["layouts"] = json::array();
  doc["topologies"] = json::array();
  doc["images"] = json::array();
  doc["labels"] = json::array();
  for (const auto& [key, row] : documents_) doc["documents"].push_back(to_json(row));
  for (const auto& [key, row] : parameters_) doc["parameters"].push_back(to_json(row));
  for (const auto& [key, row] : layouts_) doc["layouts"].push_back(to_json(row));
  for (const auto& [key, row] : topologies_) doc["topologies"].push_back(to_json(row));
  for (const auto& [key, row] : images_) doc["images"].push_back(to_json(row));
  for (const auto& [key, row] : labels_) doc["labels"].push_back(to_json(row));
  write_file_atomic(path_, doc.dump(2) + "\n");
  std::ofstream journal(path_ + ".journal", std::ios::binary | std::ios::trunc);
}

size_t Store::size() const {
  return documents_.size() + parameters_.size() + layouts_.size() + topologies_.size() +
         images_.size() + labels_.size();
}

}  // namespace cdoc
