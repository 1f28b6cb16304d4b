#include "cdoc/response.hpp"

#include <json.hpp>

#include "cdoc/errors.hpp"

namespace cdoc {

using nlohmann::json;

void ResponseCurve::validate() const {
  for (Eigen::Index i = 1; i < freq_hz.size(); ++i)
    if (!(freq_hz[i] > freq_hz[i - 1]))
      throw DomainError("response: frequency grid must be strictly ascending");
  for (const auto& [name, values] : channels)
    if (values.size() != freq_hz.size())
      throw DomainError("response: channel '" + name + "' length mismatch");
}

void ObjectiveSpec::validate() const {
  if (!(f_lo < f_hi)) throw DomainError("objective spec: requires f_lo < f_hi");
  for (const auto& c : constraints) {
    if (!(c.weight > 0.0))
      throw DomainError("objective spec: weight must be positive for channel '" +
                        c.channel + "'");
  }
}

double objective(const ResponseCurve& resp, const ObjectiveSpec& spec) {
  spec.validate();
  resp.validate();
  if (resp.freq_hz.size() == 0) throw DomainError("objective: empty response grid");
  if (spec.f_lo < resp.freq_hz[0] || spec.f_hi > resp.freq_hz[resp.freq_hz.size() - 1])
    throw DomainError("objective: spec band lies outside the response grid span");

  double cost = 0.0;
  for (const auto& c : spec.constraints) {
    auto it = resp.channels.find(c.channel);
    if (it == resp.channels.end())
      throw DomainError("objective: response has no channel '" + c.channel + "'");
    const Eigen::VectorXd& values = it->second;
    for (Eigen::Index i = 0; i < resp.freq_hz.size(); ++i) {
      const double f = resp.freq_hz[i];
      if (f < spec.f_lo || f > spec.f_hi) continue;
      const double violation = (c.relation == Relation::ge) ? c.target - values[i]
                                                            : values[i] - c.target;
      if (violation > 0.0) cost += c.weight * violation;
    }
  }
  return cost;
}

ObjectiveSpec objective_spec_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("objective spec: ") + e.what());
  }
  ObjectiveSpec spec;
  const auto& band = doc.at("band");
  spec.f_lo = band.at(0).get<double>();
  spec.f_hi = band.at(1).get<double>();
  for (const auto& c : doc.value("constraints", json::array())) {
    Constraint constraint;
    constraint.channel = c.at("channel").get<std::string>();
    const std::string relation = c.at("relation").get<std::string>();
    if (relation == "ge")
      constraint.relation = Relation::ge;
    else if (relation == "le")
      constraint.relation = Relation::le;
    else
      throw ParseError("objective spec: relation must be 'ge' or 'le'");
    constraint.target = c.at("target").get<double>();
    constraint.weight = c.value("weight", 1.0);
    spec.constraints.push_back(std::move(constraint));
  }
  spec.validate();
  return spec;
}

std::string objective_spec_to_json(const ObjectiveSpec& spec) {
  json doc;
  doc["band"] = {spec.f_lo, spec.f_hi};
  doc["constraints"] = json::array();
  for (const auto& c : spec.constraints)
    doc["constraints"].push_back({{"channel", c.channel},
                                  {"relation", c.relation == Relation::ge ? "ge" : "le"},
                                  {"target", c.target},
                                  {"weight", c.weight}});
  return doc.dump(2) + "\n";
}

}  // namespace cdoc
