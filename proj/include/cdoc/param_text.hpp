#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdoc/layout.hpp"

namespace cdoc {

// A named electrical parameter normalized to SI base units. dB-family
// values are kept in their logarithmic unit; mm is treated as a base unit.
struct ParamRecord {
  std::string name;
  double value = 0.0;                  // SI-normalized
  std::string unit;                    // canonical symbol (F, H, Ω, V, A, W, Hz, dB, dBm, mm)
  std::string raw_text;                // source substring the record came from
  std::string source_block;            // block_id, filled by callers that know it
  std::optional<double> angle_deg;     // electrical length for transmission lines

  bool operator==(const ParamRecord& other) const {
    return name == other.name && value == other.value && unit == other.unit &&
           angle_deg == other.angle_deg;
  }
};

struct ParseParamsResult {
  std::vector<ParamRecord> records;
  std::vector<std::string> diagnostics;  // skipped tokens, never fatal
};

// Recognizes NAME=VALUE lists under shared unit headers ("Capacitors
// (Unit: pF)"), chained assignments (L3=L4=910), inline units
// ("VG1=-0.35 V"), impedance-angle pairs ("TL1=60 Ω ∠ 38°") and
// "Label: VALUE UNIT" lines. Values are normalized by shifting the decimal
// exponent textually, so the stored double is the correctly rounded SI value.
ParseParamsResult parse_param_text(const std::string& text);

// Round-trip text form (parse_param_text(serialize(r)) == r).
std::string serialize_param_records(const std::vector<ParamRecord>& records);

std::string param_records_to_json(const std::vector<ParamRecord>& records);
std::vector<ParamRecord> param_records_from_json(const std::string& json_text);

// Glob match with '*' wildcards, case-sensitive; used for parameter names.
bool name_matches(const std::string& pattern, const std::string& name);

struct PoSearchResult {
  std::optional<ParamRecord> record;
  int probes = 0;                 // blocks examined
  std::vector<int> probe_ranks;   // rank of each probed block, in visit order
};

using BlockExtractor = std::function<std::vector<ParamRecord>(const LayoutBlock&)>;

// Visits blocks in ascending priority rank (document order within a rank)
// and stops at the first block whose extraction yields a record matching
// `target`. Lower-priority blocks are only reached once every higher rank
// is exhausted. Absence is a value, not an error.
PoSearchResult po_search(const std::vector<LayoutBlock>& blocks, const PriorityTable& table,
                         const std::string& target, const BlockExtractor& extractor);

// parse_param_text adapted to po_search's extractor signature.
std::vector<ParamRecord> extract_params_from_block(const LayoutBlock& block);

}  // namespace cdoc
