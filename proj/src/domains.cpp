#include "cdoc/domains.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

using nlohmann::json;

const std::map<std::string, ComponentClass>& class_names() {
  static const std::map<std::string, ComponentClass> names = {
      {"R", ComponentClass::R},     {"C", ComponentClass::C},
      {"L", ComponentClass::L},     {"D", ComponentClass::D},
      {"Q", ComponentClass::Q},     {"M", ComponentClass::M},
      {"V", ComponentClass::V},     {"I", ComponentClass::I},
      {"GND", ComponentClass::GND}, {"PORT", ComponentClass::PORT},
      {"X", ComponentClass::X}};
  return names;
}

struct UnionFind {
  std::vector<int> parent;

  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

std::string to_string(ComponentClass c) {
  for (const auto& [name, value] : class_names())
    if (value == c) return name;
  return "X";
}

ComponentClass component_class_from_string(const std::string& s) {
  auto it = class_names().find(s);
  if (it == class_names().end())
    throw ParseError("boxes: unknown component class '" + s + "'");
  return it->second;
}

bool is_two_terminal(ComponentClass c) {
  switch (c) {
    case ComponentClass::R:
    case ComponentClass::C:
    case ComponentClass::L:
    case ComponentClass::D:
    case ComponentClass::V:
    case ComponentClass::I:
      return true;
    default:
      return false;
  }
}

std::vector<ComponentBox> boxes_from_json(const std::string& json_text) {
  json arr;
  try {
    arr = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("boxes: ") + e.what());
  }
  if (!arr.is_array()) throw ParseError("boxes: expected a JSON array");
  std::vector<ComponentBox> boxes;
  size_t index = 0;
  for (const auto& item : arr) {
    const std::string where = "boxes[" + std::to_string(index++) + "]";
    ComponentBox box;
    if (!item.contains("box_id") || !item["box_id"].is_string())
      throw ParseError(where + ": missing string box_id");
    box.box_id = item["box_id"].get<std::string>();
    if (!item.contains("class_label"))
      throw ParseError(where + ": missing class_label");
    box.class_label = component_class_from_string(item["class_label"].get<std::string>());
    if (!item.contains("bbox") || !item["bbox"].is_array() || item["bbox"].size() != 4)
      throw ParseError(where + ": bbox must be [x0,y0,x1,y1]");
    box.bbox.x0 = item["bbox"][0].get<int>();
    box.bbox.y0 = item["bbox"][1].get<int>();
    box.bbox.x1 = item["bbox"][2].get<int>();
    box.bbox.y1 = item["bbox"][3].get<int>();
    if (box.bbox.x0 >= box.bbox.x1 || box.bbox.y0 >= box.bbox.y1)
      throw ParseError(where + ": bbox requires x0<x1 and y0<y1");
    box.score = item.value("score", 1.0);
    if (box.score < 0.0 || box.score > 1.0)
      throw ParseError(where + ": score must lie in [0,1]");
    boxes.push_back(std::move(box));
  }
  return boxes;
}

std::string boxes_to_json(const std::vector<ComponentBox>& boxes) {
  json arr = json::array();
  for (const auto& box : boxes) {
    arr.push_back({{"box_id", box.box_id},
                   {"class_label", to_string(box.class_label)},
                   {"bbox", {box.bbox.x0, box.bbox.y0, box.bbox.x1, box.bbox.y1}},
                   {"score", box.score}});
  }
  return arr.dump(2) + "\n";
}

std::vector<NetDomain> connected_components(const BinaryImage& img) {
  // run-based two-pass labeling; 8-connectivity means runs on adjacent
  // rows touch when their x-ranges overlap after widening by one pixel
  struct RowRun {
    Run run;
    int label;
  };

  UnionFind uf;
  std::vector<RowRun> all_runs;
  std::vector<RowRun> prev_row;
  for (int y = 0; y < img.height; ++y) {
    std::vector<RowRun> current_row;
    int x = 0;
    while (x < img.width) {
      if (!img.at(x, y)) {
        ++x;
        continue;
      }
      const int x0 = x;
      while (x < img.width && img.at(x, y)) ++x;
      RowRun rr{Run{y, x0, x}, uf.make()};
      for (const auto& above : prev_row) {
        if (above.run.x0 < rr.run.x1 + 1 && rr.run.x0 < above.run.x1 + 1)
          uf.unite(above.label, rr.label);
      }
      current_row.push_back(rr);
    }
    for (const auto& rr : current_row) all_runs.push_back(rr);
    prev_row = std::move(current_row);
  }

  // group runs by root; all_runs is already in row-major scan order, so the
  // first appearance of each root fixes the domain id ordering
  std::map<int, int> root_to_id;
  std::vector<NetDomain> domains;
  for (auto& rr : all_runs) {
    const int root = uf.find(rr.label);
    auto [it, inserted] = root_to_id.emplace(root, static_cast<int>(domains.size()));
    if (inserted) {
      NetDomain d;
      d.domain_id = it->second;
      d.bbox = Rect{rr.run.x0, rr.run.y, rr.run.x1, rr.run.y + 1};
      domains.push_back(std::move(d));
    }
    NetDomain& d = domains[static_cast<size_t>(it->second)];
    d.runs.push_back(rr.run);
    d.pixel_count += rr.run.x1 - rr.run.x0;
    d.bbox.x0 = std::min(d.bbox.x0, rr.run.x0);
    d.bbox.x1 = std::max(d.bbox.x1, rr.run.x1);
    d.bbox.y0 = std::min(d.bbox.y0, rr.run.y);
    d.bbox.y1 = std::max(d.bbox.y1, rr.run.y + 1);
  }
  return domains;
}

std::int64_t foreground_total(const BinaryImage& img) {
  return std::accumulate(img.data.begin(), img.data.end(), std::int64_t{0},
                         [](std::int64_t acc, std::uint8_t v) { return acc + (v ? 1 : 0); });
}

std::vector<NetDomain> filter_small_domains(const std::vector<NetDomain>& domains,
                                            std::int64_t foreground_total, double ratio) {
  if (ratio < 0.0 || ratio > 1.0)
    throw DomainError("filter_small_domains: ratio must lie in [0,1]");
  std::vector<NetDomain> kept;
  for (const auto& d : domains) {
    if (static_cast<double>(d.pixel_count) >=
        ratio * static_cast<double>(foreground_total))
      kept.push_back(d);
  }
  return kept;
}

bool domain_touches_rect(const NetDomain& domain, const Rect& rect) {
  if (domain.bbox.x1 <= rect.x0 || rect.x1 <= domain.bbox.x0 ||
      domain.bbox.y1 <= rect.y0 || rect.y1 <= domain.bbox.y0)
    return false;
  for (const auto& run : domain.runs) {
    if (run.y < rect.y0 || run.y >= rect.y1) continue;
    if (run.x0 < rect.x1 && rect.x0 < run.x1) return true;
  }
  return false;
}

std::vector<NetDomain> filter_by_component_overlap(const std::vector<NetDomain>& domains,
                                                   const std::vector<ComponentBox>& boxes,
                                                   int margin,
                                                   std::vector<std::string>* diagnostics) {
  if (margin < 0) throw DomainError("filter_by_component_overlap: margin must be >= 0");
  if (boxes.empty()) {
    if (diagnostics)
      diagnostics->push_back("overlap filter: no component boxes, all domains discarded");
    return {};
  }
  std::vector<Rect> expanded;
  expanded.reserve(boxes.size());
  for (const auto& box : boxes) expanded.push_back(box.bbox.expanded(margin));

  std::vector<NetDomain> kept;
  for (const auto& d : domains) {
    const bool touches = std::any_of(expanded.begin(), expanded.end(),
                                     [&d](const Rect& r) { return domain_touches_rect(d, r); });
    if (touches) kept.push_back(d);
  }
  return kept;
}

void erase_box_interiors(BinaryImage& img, const std::vector<ComponentBox>& boxes) {
  for (const auto& box : boxes) {
    const int x0 = std::max(0, box.bbox.x0), x1 = std::min(img.width, box.bbox.x1);
    const int y0 = std::max(0, box.bbox.y0), y1 = std::min(img.height, box.bbox.y1);
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) img.at(x, y) = 0;
  }
}

}  // namespace cdoc
