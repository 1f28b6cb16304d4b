#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cdoc {

// Document-region taxonomy: 20 named categories plus the reserved Unknown.
// Parsing an unlisted string yields Unknown, never an error.
enum class BlockCategory : std::uint8_t {
  Text,
  Title,
  List,
  Table,
  FunctionalBlockDiagram,
  Flowchart,
  CharacteristicCurve,
  TimingDiagram,
  CircuitDiagram,
  PinDiagram,
  EngineeringDrawing,
  SamplingDiagram,
  Schematic3D,
  PinNameDiagram,
  MarkingDiagram,
  AppearanceDiagram,
  FunctionalRegisterDiagram,
  LayoutDiagram,
  DataStructureDiagram,
  OtherPartsDiagram,
  Unknown,
};

inline constexpr int kNamedCategoryCount = 20;

std::string to_string(BlockCategory cat);

// Lowercases, collapses whitespace and strips punctuation before matching
// an alias table; tolerates a trailing plural 's'.
BlockCategory parse_category(const std::string& raw);

struct LayoutBlock {
  std::string block_id;
  std::string doc_id;
  int page = 1;                       // 1-based
  double bbox[4] = {0, 0, 0, 0};      // x0,y0,x1,y1; top-left origin, y down
  BlockCategory category = BlockCategory::Unknown;
  std::string text;
  std::string section_label;
};

// Ordered (pattern, rank) list; first pattern contained case-insensitively
// in the section label wins. default_rank must be >= every listed rank.
struct PriorityTable {
  std::vector<std::pair<std::string, int>> entries;
  int default_rank = 9;
};

// Abstract first, mirroring where key parameters tend to be recorded.
PriorityTable default_priority_table();

// Plain-text `pattern=rank` lines plus a `default=<rank>` line.
PriorityTable load_priority_table(const std::string& text);
std::string serialize_priority_table(const PriorityTable& table);

int assign_priority(const LayoutBlock& block, const PriorityTable& table);

// Layout file schema:
//   {"doc_id": "...", "blocks": [{"id","page","bbox":[4],"category",
//    "section_label","text"}, ...]}
std::vector<LayoutBlock> parse_layout(const std::string& json_text);
std::string serialize_layout(const std::string& doc_id,
                             const std::vector<LayoutBlock>& blocks);

}  // namespace cdoc
