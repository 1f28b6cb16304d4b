#include "cdoc/layout.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

using nlohmann::json;

constexpr std::array<const char*, kNamedCategoryCount + 1> kCategoryNames = {
    "Text",
    "Title",
    "List",
    "Table",
    "FunctionalBlockDiagram",
    "Flowchart",
    "CharacteristicCurve",
    "TimingDiagram",
    "CircuitDiagram",
    "PinDiagram",
    "EngineeringDrawing",
    "SamplingDiagram",
    "Schematic3D",
    "PinNameDiagram",
    "MarkingDiagram",
    "AppearanceDiagram",
    "FunctionalRegisterDiagram",
    "LayoutDiagram",
    "DataStructureDiagram",
    "OtherPartsDiagram",
    "Unknown",
};

// lowercase, collapse runs of whitespace to single spaces, drop punctuation
std::string normalize_category_key(const std::string& raw) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isalnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c)) {
      pending_space = true;
    }
    // punctuation is stripped outright
  }
  return out;
}

const std::unordered_map<std::string, BlockCategory>& alias_map() {
  static const std::unordered_map<std::string, BlockCategory> aliases = [] {
    std::unordered_map<std::string, BlockCategory> m;
    auto add = [&m](const char* name, BlockCategory cat) {
      m.emplace(normalize_category_key(name), cat);
    };
    for (int i = 0; i <= kNamedCategoryCount; ++i)
      add(kCategoryNames[static_cast<size_t>(i)], static_cast<BlockCategory>(i));
    add("functional block diagram", BlockCategory::FunctionalBlockDiagram);
    add("flow chart", BlockCategory::Flowchart);
    add("characteristic curve diagram", BlockCategory::CharacteristicCurve);
    add("timing diagram", BlockCategory::TimingDiagram);
    add("circuit diagram", BlockCategory::CircuitDiagram);
    add("pin diagram", BlockCategory::PinDiagram);
    add("engineering drawing", BlockCategory::EngineeringDrawing);
    add("sampling diagram", BlockCategory::SamplingDiagram);
    add("3d schematic", BlockCategory::Schematic3D);
    add("schematic 3d", BlockCategory::Schematic3D);
    add("pin name diagram", BlockCategory::PinNameDiagram);
    add("marking diagram", BlockCategory::MarkingDiagram);
    add("appearance diagram", BlockCategory::AppearanceDiagram);
    add("functional register diagram", BlockCategory::FunctionalRegisterDiagram);
    add("layout diagram", BlockCategory::LayoutDiagram);
    add("data structure diagram", BlockCategory::DataStructureDiagram);
    add("other parts diagram", BlockCategory::OtherPartsDiagram);
    return m;
  }();
  return aliases;
}

}  // namespace

std::string to_string(BlockCategory cat) {
  return kCategoryNames[static_cast<size_t>(cat)];
}

BlockCategory parse_category(const std::string& raw) {
  const auto& aliases = alias_map();
  std::string key = normalize_category_key(raw);
  auto it = aliases.find(key);
  if (it != aliases.end()) return it->second;
  if (!key.empty() && key.back() == 's') {
    it = aliases.find(key.substr(0, key.size() - 1));
    if (it != aliases.end()) return it->second;
  }
  return BlockCategory::Unknown;
}

PriorityTable default_priority_table() {
  PriorityTable t;
  t.entries = {{"Abstract", 1},
               {"Circuit Design", 2},
               {"Measurement Results", 3},
               {"Simulation Results", 4},
               {"Introduction", 5}};
  t.default_rank = 9;
  return t;
}

PriorityTable load_priority_table(const std::string& text) {
  PriorityTable t;
  t.default_rank = 0;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_default = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("priority table line " + std::to_string(line_no) +
                       ": expected pattern=rank");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(value);
    int rank = 0;
    try {
      rank = std::stoi(value);
    } catch (const std::exception&) {
      throw ParseError("priority table line " + std::to_string(line_no) +
                       ": rank is not an integer: " + value);
    }
    if (rank < 1)
      throw ParseError("priority table line " + std::to_string(line_no) +
                       ": rank must be >= 1");
    if (key == "default") {
      t.default_rank = rank;
      saw_default = true;
    } else {
      t.entries.emplace_back(key, rank);
    }
  }
  if (!saw_default)
    throw ParseError("priority table: missing default=<rank> line");
  for (const auto& [pattern, rank] : t.entries)
    if (rank > t.default_rank)
      throw ParseError("priority table: rank for '" + pattern +
                       "' exceeds default rank");
  return t;
}

std::string serialize_priority_table(const PriorityTable& table) {
  std::ostringstream out;
  for (const auto& [pattern, rank] : table.entries)
    out << pattern << "=" << rank << "\n";
  out << "default=" << table.default_rank << "\n";
  return out.str();
}

int assign_priority(const LayoutBlock& block, const PriorityTable& table) {
  auto lower = [](const std::string& s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  const std::string label = lower(block.section_label);
  for (const auto& [pattern, rank] : table.entries) {
    if (label.find(lower(pattern)) != std::string::npos) return rank;
  }
  return table.default_rank;
}

std::vector<LayoutBlock> parse_layout(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("layout file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("doc_id") || !doc.contains("blocks"))
    throw ParseError("layout file: expected object with doc_id and blocks");
  if (!doc["doc_id"].is_string())
    throw ParseError("layout file: doc_id must be a string");
  const std::string doc_id = doc["doc_id"].get<std::string>();
  if (!doc["blocks"].is_array())
    throw ParseError("layout file: blocks must be an array");

  std::vector<LayoutBlock> blocks;
  std::unordered_set<std::string> seen_ids;
  size_t index = 0;
  for (const auto& entry : doc["blocks"]) {
    const std::string where = "blocks[" + std::to_string(index) + "]";
    ++index;
    if (!entry.is_object()) throw ParseError("layout file: " + where + " is not an object");
    auto require = [&](const char* field) -> const json& {
      if (!entry.contains(field))
        throw ParseError("layout file: " + where + " missing field '" + field + "'");
      return entry[field];
    };
    LayoutBlock b;
    b.doc_id = doc_id;
    const json& id = require("id");
    if (!id.is_string()) throw ParseError("layout file: " + where + ".id must be a string");
    b.block_id = id.get<std::string>();
    if (!seen_ids.insert(b.block_id).second)
      throw ParseError("layout file: duplicate block id '" + b.block_id + "'");
    const json& page = require("page");
    if (!page.is_number_integer() || page.get<int>() < 1)
      throw ParseError("layout file: " + where + ".page must be an integer >= 1");
    b.page = page.get<int>();
    const json& bbox = require("bbox");
    if (!bbox.is_array() || bbox.size() != 4)
      throw ParseError("layout file: " + where + ".bbox must be [x0,y0,x1,y1]");
    for (int i = 0; i < 4; ++i) {
      if (!bbox[static_cast<size_t>(i)].is_number())
        throw ParseError("layout file: " + where + ".bbox must be numeric");
      b.bbox[i] = bbox[static_cast<size_t>(i)].get<double>();
    }
    if (!(b.bbox[0] < b.bbox[2]) || !(b.bbox[1] < b.bbox[3]))
      throw ParseError("layout file: " + where + ".bbox requires x0<x1 and y0<y1");
    const json& category = require("category");
    if (!category.is_string())
      throw ParseError("layout file: " + where + ".category must be a string");
    b.category = parse_category(category.get<std::string>());
    if (entry.contains("section_label")) {
      if (!entry["section_label"].is_string())
        throw ParseError("layout file: " + where + ".section_label must be a string");
      b.section_label = entry["section_label"].get<std::string>();
    }
    if (entry.contains("text")) {
      if (!entry["text"].is_string())
        throw ParseError("layout file: " + where + ".text must be a string");
      b.text = entry["text"].get<std::string>();
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::string serialize_layout(const std::string& doc_id,
                             const std::vector<LayoutBlock>& blocks) {
  json doc;
  doc["doc_id"] = doc_id;
  doc["blocks"] = json::array();
  for (const auto& b : blocks) {
    json entry;
    entry["id"] = b.block_id;
    entry["page"] = b.page;
    entry["bbox"] = {b.bbox[0], b.bbox[1], b.bbox[2], b.bbox[3]};
    entry["category"] = to_string(b.category);
    entry["section_label"] = b.section_label;
    entry["text"] = b.text;
    doc["blocks"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace cdoc
