#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdoc/image.hpp"

namespace cdoc {

// Half-open pixel rectangle.
struct Rect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  bool contains(int x, int y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
  Rect expanded(int margin) const {
    return Rect{x0 - margin, y0 - margin, x1 + margin, y1 + margin};
  }
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

enum class ComponentClass { R, C, L, D, Q, M, V, I, GND, PORT, X };

std::string to_string(ComponentClass c);
ComponentClass component_class_from_string(const std::string& s);
bool is_two_terminal(ComponentClass c);

struct ComponentBox {
  std::string box_id;
  ComponentClass class_label = ComponentClass::X;
  Rect bbox;
  double score = 1.0;  // detection confidence in [0,1]
};

std::vector<ComponentBox> boxes_from_json(const std::string& json_text);
std::string boxes_to_json(const std::vector<ComponentBox>& boxes);

// Maximal horizontal run of foreground pixels: [x0, x1) on row y.
struct Run {
  int y = 0;
  int x0 = 0;
  int x1 = 0;
};

// One maximal 8-connected set of foreground pixels.
struct NetDomain {
  int domain_id = 0;
  std::int64_t pixel_count = 0;
  Rect bbox;
  std::vector<Run> runs;  // sorted by (y, x0)
};

// 8-connected components; domain ids are assigned by first pixel in
// row-major scan order.
std::vector<NetDomain> connected_components(const BinaryImage& img);

std::int64_t foreground_total(const BinaryImage& img);

// Keeps domains with pixel_count >= ratio * foreground_total, order kept.
std::vector<NetDomain> filter_small_domains(const std::vector<NetDomain>& domains,
                                            std::int64_t foreground_total, double ratio);

// Keeps a domain iff one of its pixels lies in some box expanded by margin.
// An empty box list discards everything and leaves a warning diagnostic.
std::vector<NetDomain> filter_by_component_overlap(const std::vector<NetDomain>& domains,
                                                   const std::vector<ComponentBox>& boxes,
                                                   int margin,
                                                   std::vector<std::string>* diagnostics);

// Clears foreground inside every detection box so symbol ink does not
// surface as a net and through-wires are severed at the terminals.
void erase_box_interiors(BinaryImage& img, const std::vector<ComponentBox>& boxes);

bool domain_touches_rect(const NetDomain& domain, const Rect& rect);

inline constexpr double kDefaultMinDomainRatio = 0.10;
inline constexpr int kDefaultOverlapMargin = 2;

}  // namespace cdoc
