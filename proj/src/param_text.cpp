#include "cdoc/param_text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

using nlohmann::json;

// UTF-8 byte sequences we have to recognize in datasheet text.
constexpr const char* kOmega = "Ω";      // Ω
constexpr const char* kOhmSign = "Ω";    // Ω (letterlike symbol)
constexpr const char* kMicro = "µ";      // µ
constexpr const char* kGreekMu = "μ";    // μ
constexpr const char* kAngle = "∠";      // ∠
constexpr const char* kDegree = "°";     // °

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, size_t pos, const char* token) {
  const size_t len = std::char_traits<char>::length(token);
  return s.compare(pos, len, token) == 0;
}

bool is_designator(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

struct UnitInfo {
  std::string base;   // canonical symbol
  int exp_shift = 0;  // decimal exponent applied during SI normalization
};

// Replaces the ohm letterlike symbol and spelled-out forms with Ω.
std::string normalize_unit_token(std::string u) {
  std::string out;
  for (size_t i = 0; i < u.size();) {
    if (starts_with(u, i, kOhmSign)) {
      out += kOmega;
      i += std::char_traits<char>::length(kOhmSign);
    } else {
      out.push_back(u[i]);
      ++i;
    }
  }
  if (out == "Ohm" || out == "ohm" || out == "Ohms" || out == "ohms") out = kOmega;
  return out;
}

std::optional<UnitInfo> canonical_unit(const std::string& raw) {
  const std::string u = normalize_unit_token(raw);
  if (u.empty()) return std::nullopt;
  // Logarithmic units stay as-is; they are not linearly convertible.
  if (u == "dB" || u == "dBm") return UnitInfo{u, 0};

  static const std::vector<std::string> bases = {"F",  "H", std::string(kOmega),
                                                 "V",  "A", "W",
                                                 "Hz", "mm"};
  for (const auto& base : bases)
    if (u == base) return UnitInfo{base, 0};

  // prefix + base
  int shift = 0;
  size_t consumed = 0;
  if (starts_with(u, 0, kMicro) || starts_with(u, 0, kGreekMu)) {
    shift = -6;
    consumed = 2;  // both micro forms are two UTF-8 bytes
  } else {
    switch (u[0]) {
      case 'f': shift = -15; break;
      case 'p': shift = -12; break;
      case 'n': shift = -9; break;
      case 'm': shift = -3; break;
      case 'k': shift = 3; break;
      case 'M': shift = 6; break;
      case 'G': shift = 9; break;
      default: return std::nullopt;
    }
    consumed = 1;
  }
  const std::string rest = u.substr(consumed);
  for (const auto& base : bases)
    if (rest == base) return UnitInfo{base, shift};
  return std::nullopt;
}

// Splits a decimal literal into mantissa and exponent so the SI shift can
// be applied textually; the single strtod then rounds the true decimal.
struct NumberToken {
  std::string text;      // literal as written
  std::string mantissa;  // sign + digits + optional point
  int exponent = 0;
};

std::optional<NumberToken> scan_number(const std::string& s, size_t& pos) {
  size_t i = pos;
  const size_t n = s.size();
  size_t start = i;
  if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
  size_t digits = 0;
  while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < n && s[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return std::nullopt;
  size_t mantissa_end = i;
  int exponent = 0;
  if (i < n && (s[i] == 'e' || s[i] == 'E')) {
    size_t j = i + 1;
    int sign = 1;
    if (j < n && (s[j] == '+' || s[j] == '-')) {
      if (s[j] == '-') sign = -1;
      ++j;
    }
    const size_t exp_start = j;
    while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > exp_start) {
      exponent = sign * std::atoi(s.substr(exp_start, j - exp_start).c_str());
      i = j;
    }
  }
  NumberToken tok;
  tok.text = s.substr(start, i - start);
  tok.mantissa = s.substr(start, mantissa_end - start);
  tok.exponent = exponent;
  pos = i;
  return tok;
}

double shifted_value(const NumberToken& tok, int shift) {
  const std::string literal = tok.mantissa + "e" + std::to_string(tok.exponent + shift);
  return std::strtod(literal.c_str(), nullptr);
}

bool is_unit_char(const std::string& s, size_t pos, size_t& len) {
  const unsigned char c = static_cast<unsigned char>(s[pos]);
  if (std::isalpha(c)) {
    len = 1;
    return true;
  }
  for (const char* sym : {kOmega, kOhmSign, kMicro, kGreekMu}) {
    if (starts_with(s, pos, sym)) {
      len = std::char_traits<char>::length(sym);
      return true;
    }
  }
  return false;
}

struct ValueTail {
  NumberToken number;
  std::optional<UnitInfo> unit;
  std::string unit_text;
  std::optional<double> angle_deg;
};

// number [unit] [∠ angle[°]] [ (comment) ]
std::optional<ValueTail> parse_value_tail(const std::string& raw,
                                          const std::optional<std::string>& shared_unit) {
  std::string s = trim(raw);
  // strip a trailing parenthetical comment such as "(average)"
  if (!s.empty() && s.back() == ')') {
    const auto open = s.rfind(" (");
    if (open != std::string::npos) s = trim(s.substr(0, open));
  }
  size_t pos = 0;
  auto number = scan_number(s, pos);
  if (!number) return std::nullopt;

  while (pos < s.size() && s[pos] == ' ') ++pos;
  std::string unit_text;
  size_t len = 0;
  while (pos < s.size() && is_unit_char(s, pos, len)) {
    unit_text += s.substr(pos, len);
    pos += len;
  }
  while (pos < s.size() && s[pos] == ' ') ++pos;

  std::optional<double> angle;
  if (pos < s.size() && starts_with(s, pos, kAngle)) {
    pos += std::char_traits<char>::length(kAngle);
    while (pos < s.size() && s[pos] == ' ') ++pos;
    auto angle_tok = scan_number(s, pos);
    if (!angle_tok) return std::nullopt;
    angle = shifted_value(*angle_tok, 0);
    if (pos < s.size() && starts_with(s, pos, kDegree))
      pos += std::char_traits<char>::length(kDegree);
  }
  while (pos < s.size() && s[pos] == ' ') ++pos;
  if (pos != s.size()) return std::nullopt;  // trailing junk: ranges, ×, ±

  ValueTail tail;
  tail.number = *number;
  tail.unit_text = unit_text;
  tail.angle_deg = angle;
  if (!unit_text.empty()) {
    tail.unit = canonical_unit(unit_text);
    if (!tail.unit) return std::nullopt;
  } else if (shared_unit) {
    tail.unit = canonical_unit(*shared_unit);
    if (!tail.unit) return std::nullopt;
  } else {
    return std::nullopt;  // no unit context at all
  }
  return tail;
}

std::vector<std::string> split_items(const std::string& s) {
  std::vector<std::string> items;
  std::string current;
  for (char c : s) {
    if (c == ',') {
      items.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  const std::string last = trim(current);
  if (!last.empty()) items.push_back(last);
  return items;
}

std::string strip_decorations(const std::string& line) {
  std::string s = trim(line);
  while (!s.empty() && (s.front() == '-' || s.front() == '*' || s.front() == ' '))
    s.erase(s.begin());
  while (!s.empty() && (s.back() == '*' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

ParseParamsResult parse_param_text(const std::string& text) {
  ParseParamsResult result;
  std::optional<std::string> shared_unit;

  auto emit = [&result](const std::string& name, const ValueTail& tail,
                        const std::string& raw_item) {
    ParamRecord rec;
    rec.name = name;
    rec.unit = tail.unit->base;
    rec.value = shifted_value(tail.number, tail.unit->exp_shift);
    rec.raw_text = raw_item;
    rec.angle_deg = tail.angle_deg;
    result.records.push_back(std::move(rec));
  };

  auto parse_item = [&](const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      result.diagnostics.push_back("skipped: '" + item + "' (no assignment)");
      return;
    }
    // chained names: L3=L4=910 assigns the final value to every name
    std::vector<std::string> names;
    std::string rest = item;
    while (true) {
      const auto e = rest.find('=');
      if (e == std::string::npos) break;
      const std::string head = trim(rest.substr(0, e));
      if (!is_designator(head)) {
        result.diagnostics.push_back("skipped: '" + item + "' (bad name '" + head + "')");
        return;
      }
      names.push_back(head);
      rest = rest.substr(e + 1);
      // stop once the remainder no longer looks like another NAME=
      const auto next_eq = rest.find('=');
      if (next_eq == std::string::npos) break;
      if (!is_designator(trim(rest.substr(0, next_eq)))) break;
    }
    const auto tail = parse_value_tail(rest, shared_unit);
    if (!tail) {
      result.diagnostics.push_back("skipped: '" + item + "' (unparseable value '" +
                                   trim(rest) + "')");
      return;
    }
    for (const auto& name : names) emit(name, *tail, item);
  };

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    // shared unit headers: "Capacitors (Unit: pF)"
    const auto unit_pos = line.find("(Unit:");
    if (unit_pos != std::string::npos) {
      const auto close = line.find(')', unit_pos);
      if (close != std::string::npos) {
        const std::string token = trim(line.substr(unit_pos + 6, close - unit_pos - 6));
        shared_unit = canonical_unit(token) ? std::optional<std::string>(token)
                                            : std::nullopt;
        continue;
      }
    }
    std::string s = strip_decorations(line);
    if (s.empty()) continue;

    const auto eq = s.find('=');
    const auto colon = s.find(':');
    if (eq != std::string::npos) {
      // drop a group label before the assignments: "Bias Voltages: VG1=..."
      if (colon != std::string::npos && colon < eq) s = trim(s.substr(colon + 1));
      for (const auto& item : split_items(s)) parse_item(item);
    } else if (colon != std::string::npos) {
      const std::string name = trim(s.substr(0, colon));
      const std::string value = trim(s.substr(colon + 1));
      if (name.empty() || value.empty()) continue;
      const auto tail = parse_value_tail(value, std::nullopt);
      if (!tail) {
        result.diagnostics.push_back("skipped: '" + s + "' (unparseable value '" + value +
                                     "')");
        continue;
      }
      emit(name, *tail, s);
    }
    // lines with neither '=' nor ':' are narrative text
  }
  return result;
}

std::string serialize_param_records(const std::vector<ParamRecord>& records) {
  std::ostringstream out;
  for (const auto& rec : records) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, rec.value);
    const std::string value(buf, end);
    if (is_designator(rec.name))
      out << rec.name << "=" << value << " " << rec.unit;
    else
      out << rec.name << ": " << value << " " << rec.unit;
    if (rec.angle_deg) {
      auto [aend, aec] = std::to_chars(buf, buf + sizeof buf, *rec.angle_deg);
      out << " " << kAngle << " " << std::string(buf, aend) << kDegree;
    }
    out << "\n";
  }
  return out.str();
}

std::string param_records_to_json(const std::vector<ParamRecord>& records) {
  json arr = json::array();
  for (const auto& rec : records) {
    json item;
    item["name"] = rec.name;
    item["value"] = rec.value;
    item["unit"] = rec.unit;
    item["raw_text"] = rec.raw_text;
    item["source_block"] = rec.source_block;
    if (rec.angle_deg) item["angle_deg"] = *rec.angle_deg;
    arr.push_back(std::move(item));
  }
  return arr.dump(2) + "\n";
}

std::vector<ParamRecord> param_records_from_json(const std::string& json_text) {
  json arr;
  try {
    arr = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("param records: ") + e.what());
  }
  if (!arr.is_array()) throw ParseError("param records: expected a JSON array");
  std::vector<ParamRecord> records;
  for (const auto& item : arr) {
    ParamRecord rec;
    rec.name = item.at("name").get<std::string>();
    rec.value = item.at("value").get<double>();
    rec.unit = item.at("unit").get<std::string>();
    if (item.contains("raw_text")) rec.raw_text = item["raw_text"].get<std::string>();
    if (item.contains("source_block"))
      rec.source_block = item["source_block"].get<std::string>();
    if (item.contains("angle_deg")) rec.angle_deg = item["angle_deg"].get<double>();
    records.push_back(std::move(rec));
  }
  return records;
}

bool name_matches(const std::string& pattern, const std::string& name) {
  // iterative glob with '*' backtracking
  size_t p = 0, n = 0;
  size_t star = std::string::npos, match = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == name[n])) {
      ++p, ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      match = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++match;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

PoSearchResult po_search(const std::vector<LayoutBlock>& blocks, const PriorityTable& table,
                         const std::string& target, const BlockExtractor& extractor) {
  std::vector<std::pair<int, size_t>> order;  // (rank, original index)
  order.reserve(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i)
    order.emplace_back(assign_priority(blocks[i], table), i);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  PoSearchResult result;
  for (const auto& [rank, index] : order) {
    ++result.probes;
    result.probe_ranks.push_back(rank);
    const auto records = extractor(blocks[index]);
    for (const auto& rec : records) {
      if (name_matches(target, rec.name)) {
        result.record = rec;
        return result;
      }
    }
  }
  return result;
}

std::vector<ParamRecord> extract_params_from_block(const LayoutBlock& block) {
  auto parsed = parse_param_text(block.text);
  for (auto& rec : parsed.records) rec.source_block = block.block_id;
  return std::move(parsed.records);
}

}  // namespace cdoc
