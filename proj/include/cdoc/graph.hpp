#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdoc/domains.hpp"
#include "cdoc/param_text.hpp"

namespace cdoc {

// One contact region between a net domain and a margin-expanded component
// box. A domain meeting a box in several disjoint regions yields several
// incidences (a wire entering and leaving a box is two terminals).
struct Incidence {
  std::string box_id;
  int domain_id = 0;
  std::int64_t contact_pixels = 0;
  double cx = 0.0, cy = 0.0;  // contact centroid
};

std::vector<Incidence> detect_intersections(const std::vector<NetDomain>& domains,
                                            const std::vector<ComponentBox>& boxes,
                                            int margin);

struct GraphComponent {
  std::string box_id;
  ComponentClass cls = ComponentClass::X;
  std::string refdes;
  std::vector<int> pins;  // net ids; 0 is ground when has_ground
};

struct CircuitGraph {
  std::vector<GraphComponent> components;
  int net_count = 0;   // net ids are 0..net_count-1
  bool has_ground = false;  // net 0 is the ground rail
  std::string source_id;
  std::vector<std::string> diagnostics;
};

// Deterministic graph construction: refdes counters run in box reading
// order (top-to-bottom, left-to-right), pins are ordered by contact
// centroid angle clockwise from 12 o'clock, and input incidence order is
// irrelevant (everything is sorted internally). GND boxes merge their nets
// into node 0. A two-terminal component touching three or more distinct
// nets raises TopologyError naming them.
CircuitGraph build_graph(const std::vector<ComponentBox>& boxes,
                         const std::vector<Incidence>& incidences);

struct NetlistLine {
  std::string refdes;
  ComponentClass cls = ComponentClass::X;
  std::vector<int> nodes;
  std::optional<double> value;  // absent renders as "?"
};

struct Netlist {
  std::vector<std::string> header;  // comment lines without the leading '*'
  std::vector<NetlistLine> lines;
  std::vector<std::string> diagnostics;

  std::string text() const;
};

// One component per line: `<refdes> <node>+ <value>`, refdes first letter
// in {R,C,L,D,Q,M,V,I,X}, nodes are non-negative integers, node 0 is
// ground, value is a decimal or "?", comments start with '*'. Nodes are
// renumbered by first appearance; value lookup joins params by refdes.
Netlist emit_netlist(const CircuitGraph& graph, const std::vector<ParamRecord>& params);

Netlist parse_netlist(const std::string& text);

// Semantic graph of a parsed netlist (components + node incidences).
CircuitGraph netlist_to_graph(const Netlist& netlist);

// Component-class-preserving bijection between nets (ground maps to
// ground) under which pin multisets agree. Exact backtracking; intended
// for the small graphs this pipeline produces.
bool are_isomorphic(const CircuitGraph& a, const CircuitGraph& b);

}  // namespace cdoc
