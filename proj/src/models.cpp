#include "cdoc/models.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

using nlohmann::json;

ResponseCurve cascade_response(const std::vector<ModelElement>& elements,
                               const Eigen::VectorXd& freq, double z0,
                               const Eigen::VectorXd& x_c, const Eigen::VectorXd& x_a) {
  std::vector<CascadeStage> stages;
  stages.reserve(elements.size());
  int design_index = 0, aux_index = 0;
  for (const auto& element : elements) {
    CascadeStage stage;
    stage.kind = element.kind;
    switch (element.role) {
      case ElementRole::design: stage.value = x_c[design_index++]; break;
      case ElementRole::auxiliary: stage.value = x_a[aux_index++]; break;
      case ElementRole::hidden: stage.value = element.value; break;
    }
    stages.push_back(stage);
  }
  ResponseCurve curve;
  curve.freq_hz = freq;
  Eigen::VectorXd gain(freq.size()), noise(freq.size());
  for (Eigen::Index i = 0; i < freq.size(); ++i) {
    gain[i] = s21_db(stages, freq[i], z0);
    noise[i] = noise_proxy_db(stages, freq[i], z0);
  }
  curve.channels["s21_db"] = std::move(gain);
  curve.channels["nf_db"] = std::move(noise);
  return curve;
}

ModelPair make_cascade_pair(std::string id, std::vector<ModelElement> elements,
                            Eigen::VectorXd freq, double z0, ObjectiveSpec spec) {
  ParamSpace design, aux;
  std::vector<double> hidden, start;
  for (const auto& element : elements) {
    switch (element.role) {
      case ElementRole::design:
        design.names.push_back(element.name);
        design.lo.conservativeResize(design.lo.size() + 1);
        design.hi.conservativeResize(design.hi.size() + 1);
        design.lo[design.lo.size() - 1] = element.lo;
        design.hi[design.hi.size() - 1] = element.hi;
        break;
      case ElementRole::auxiliary:
        aux.names.push_back(element.name);
        aux.lo.conservativeResize(aux.lo.size() + 1);
        aux.hi.conservativeResize(aux.hi.size() + 1);
        aux.lo[aux.lo.size() - 1] = element.lo;
        aux.hi[aux.hi.size() - 1] = element.hi;
        hidden.push_back(element.hidden_value);
        start.push_back(element.start);
        break;
      case ElementRole::hidden:
        break;
    }
  }
  Eigen::VectorXd hidden_vec = Eigen::Map<Eigen::VectorXd>(hidden.data(),
                                                           static_cast<Eigen::Index>(hidden.size()));
  Eigen::VectorXd start_vec = Eigen::Map<Eigen::VectorXd>(start.data(),
                                                          static_cast<Eigen::Index>(start.size()));
  auto eval = [elements = std::move(elements), freq = std::move(freq), z0](
                  const Eigen::VectorXd& x_c, const Eigen::VectorXd& x_a) {
    return cascade_response(elements, freq, z0, x_c, x_a);
  };
  return ModelPair(std::move(id), std::move(design), std::move(aux), std::move(hidden_vec),
                   std::move(start_vec), std::move(spec), std::move(eval));
}

}  // namespace

void ParamSpace::check(const Eigen::VectorXd& x, const std::string& what) const {
  if (x.size() != lo.size())
    throw DomainError(what + ": expected " + std::to_string(lo.size()) +
                      " entries, got " + std::to_string(x.size()));
  std::string offenders;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i] || !std::isfinite(x[i])) {
      if (!offenders.empty()) offenders += ", ";
      offenders += names[static_cast<size_t>(i)] + "=" + std::to_string(x[i]);
    }
  }
  if (!offenders.empty())
    throw DomainError(what + ": out of bounds: " + offenders);
}

ModelPair::ModelPair(std::string model_id, ParamSpace design_space, ParamSpace aux_space,
                     Eigen::VectorXd hidden, Eigen::VectorXd start, ObjectiveSpec spec,
                     EvalFn eval)
    : id(std::move(model_id)),
      design(std::move(design_space)),
      aux(std::move(aux_space)),
      hidden_aux(std::move(hidden)),
      aux_start(std::move(start)),
      default_spec(std::move(spec)),
      eval_(std::move(eval)) {}

ResponseCurve ModelPair::coarse_eval(const Eigen::VectorXd& x_c,
                                     const Eigen::VectorXd& x_a) const {
  design.check(x_c, "coarse_eval(" + id + ") design vector");
  aux.check(x_a, "coarse_eval(" + id + ") auxiliary vector");
  return eval_(x_c, x_a);
}

ResponseCurve ModelPair::fine_eval(const Eigen::VectorXd& x_c) const {
  design.check(x_c, "fine_eval(" + id + ") design vector");
  return eval_(x_c, hidden_aux);
}

Eigen::VectorXd default_freq_grid(double f_lo, double f_hi, int points) {
  const double lo = f_lo - 0.2 * (f_hi - f_lo);
  const double hi = f_hi + 0.2 * (f_hi - f_lo);
  return Eigen::VectorXd::LinSpaced(points, lo, hi);
}

ModelPair make_toy_pair() {
  ParamSpace design{{"x"}, Eigen::VectorXd::Constant(1, -2.0),
                    Eigen::VectorXd::Constant(1, 2.0)};
  ParamSpace aux{{"a"}, Eigen::VectorXd::Constant(1, -2.0),
                 Eigen::VectorXd::Constant(1, 2.0)};
  Eigen::VectorXd hidden = Eigen::VectorXd::Constant(1, 1.0);
  Eigen::VectorXd start = Eigen::VectorXd::Zero(1);
  ObjectiveSpec spec;
  spec.f_lo = 1.0e9;
  spec.f_hi = 3.0e9;
  spec.constraints = {{"response", Relation::le, 0.0, 1.0}};
  Eigen::VectorXd freq = Eigen::VectorXd::LinSpaced(5, 1.0e9, 3.0e9);
  auto eval = [freq](const Eigen::VectorXd& x_c, const Eigen::VectorXd& x_a) {
    ResponseCurve curve;
    curve.freq_hz = freq;
    const double value = (x_c[0] - x_a[0]) * (x_c[0] - x_a[0]);
    curve.channels["response"] = Eigen::VectorXd::Constant(freq.size(), value);
    return curve;
  };
  return ModelPair("toy", std::move(design), std::move(aux), std::move(hidden),
                   std::move(start), std::move(spec), std::move(eval));
}

ModelPair make_lc_pair() {
  // design ladder between fixed-but-unknown port parasitics; the spec is
  // infeasible for the bare parasitic network, so the optimizer has to
  // build the compensating filter
  std::vector<ModelElement> elements;
  auto aux_el = [](ElementKind kind, const char* name, double hi, double hidden) {
    ModelElement e;
    e.kind = kind;
    e.name = name;
    e.role = ElementRole::auxiliary;
    e.lo = 0.0;
    e.hi = hi;
    e.hidden_value = hidden;
    e.start = 0.0;
    return e;
  };
  auto design_el = [](ElementKind kind, const char* name, double hi) {
    ModelElement e;
    e.kind = kind;
    e.name = name;
    e.role = ElementRole::design;
    e.lo = 0.0;
    e.hi = hi;
    return e;
  };
  elements.push_back(aux_el(ElementKind::shunt_c, "cp_in", 4.0e-12, 2.2e-12));
  elements.push_back(design_el(ElementKind::series_l, "L1", 10.0e-9));
  elements.push_back(design_el(ElementKind::shunt_c, "C1", 6.0e-12));
  elements.push_back(design_el(ElementKind::series_l, "L2", 10.0e-9));
  elements.push_back(aux_el(ElementKind::series_l, "lp", 3.0e-9, 0.9e-9));
  elements.push_back(aux_el(ElementKind::shunt_c, "cp_out", 4.0e-12, 2.2e-12));

  ObjectiveSpec spec;
  spec.f_lo = 0.5e9;
  spec.f_hi = 2.2e9;
  spec.constraints = {{"s21_db", Relation::ge, -0.6, 1.0}};
  return make_cascade_pair("lcmatch", std::move(elements),
                           default_freq_grid(spec.f_lo, spec.f_hi), kDefaultReferenceOhms,
                           std::move(spec));
}

ModelPair make_twostage_pair() {
  std::vector<ModelElement> elements;
  auto aux_el = [](ElementKind kind, const char* name, double hi, double hidden) {
    ModelElement e;
    e.kind = kind;
    e.name = name;
    e.role = ElementRole::auxiliary;
    e.lo = 0.0;
    e.hi = hi;
    e.hidden_value = hidden;
    e.start = 0.0;
    return e;
  };
  auto design_el = [](ElementKind kind, const char* name, double hi) {
    ModelElement e;
    e.kind = kind;
    e.name = name;
    e.role = ElementRole::design;
    e.lo = 0.0;
    e.hi = hi;
    return e;
  };
  elements.push_back(aux_el(ElementKind::shunt_c, "cp_in", 2.0e-12, 0.9e-12));
  elements.push_back(design_el(ElementKind::series_l, "L1", 10.0e-9));
  elements.push_back(design_el(ElementKind::shunt_c, "C1", 6.0e-12));
  elements.push_back(design_el(ElementKind::series_l, "L2", 10.0e-9));
  elements.push_back(design_el(ElementKind::shunt_c, "C2", 6.0e-12));
  elements.push_back(aux_el(ElementKind::shunt_c, "cp_mid", 2.0e-12, 0.7e-12));
  elements.push_back(design_el(ElementKind::series_l, "L3", 10.0e-9));
  elements.push_back(design_el(ElementKind::shunt_c, "C3", 6.0e-12));
  elements.push_back(design_el(ElementKind::series_l, "L4", 10.0e-9));
  elements.push_back(design_el(ElementKind::shunt_c, "C4", 6.0e-12));
  elements.push_back(aux_el(ElementKind::series_l, "lp", 2.0e-9, 0.8e-9));
  elements.push_back(aux_el(ElementKind::shunt_c, "cp_out", 2.0e-12, 0.9e-12));

  ObjectiveSpec spec;
  spec.f_lo = 0.8e9;
  spec.f_hi = 2.4e9;
  spec.constraints = {{"s21_db", Relation::ge, -1.0, 1.0},
                      {"nf_db", Relation::le, 1.2, 0.5}};
  return make_cascade_pair("twostage", std::move(elements),
                           default_freq_grid(spec.f_lo, spec.f_hi), kDefaultReferenceOhms,
                           std::move(spec));
}

ModelPair model_pair_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  const std::string id = doc.at("model_id").get<std::string>();
  const double z0 = doc.value("z0", kDefaultReferenceOhms);
  const auto& freq_spec = doc.at("freq");
  const double start_hz = freq_spec.at("start_hz").get<double>();
  const double stop_hz = freq_spec.at("stop_hz").get<double>();
  const int points = freq_spec.value("points", 81);
  if (!(start_hz < stop_hz) || points < 2)
    throw ParseError("model file: freq requires start_hz < stop_hz and points >= 2");
  Eigen::VectorXd freq = Eigen::VectorXd::LinSpaced(points, start_hz, stop_hz);

  ObjectiveSpec spec = objective_spec_from_json(doc.at("objective").dump());

  std::vector<ModelElement> elements;
  for (const auto& item : doc.at("elements")) {
    ModelElement e;
    e.kind = element_kind_from_string(item.at("kind").get<std::string>());
    e.name = item.at("name").get<std::string>();
    const std::string role = item.at("role").get<std::string>();
    if (role == "design") {
      e.role = ElementRole::design;
      e.lo = item.at("lo").get<double>();
      e.hi = item.at("hi").get<double>();
    } else if (role == "auxiliary") {
      e.role = ElementRole::auxiliary;
      e.lo = item.at("lo").get<double>();
      e.hi = item.at("hi").get<double>();
      e.hidden_value = item.at("hidden_value").get<double>();
      e.start = item.value("start", e.lo);
      if (e.hidden_value < e.lo || e.hidden_value > e.hi)
        throw ParseError("model file: hidden_value out of bounds for '" + e.name + "'");
    } else if (role == "hidden") {
      e.role = ElementRole::hidden;
      e.value = item.at("value").get<double>();
    } else {
      throw ParseError("model file: unknown role '" + role + "' for '" + e.name + "'");
    }
    if (e.lo > e.hi) throw ParseError("model file: lo > hi for '" + e.name + "'");
    elements.push_back(std::move(e));
  }
  return make_cascade_pair(id, std::move(elements), std::move(freq), z0, std::move(spec));
}

ModelPair load_model_pair(const std::string& id_or_path) {
  if (id_or_path == "toy") return make_toy_pair();
  if (id_or_path == "lcmatch") return make_lc_pair();
  if (id_or_path == "twostage") return make_twostage_pair();
  std::ifstream in(id_or_path, std::ios::binary);
  if (!in)
    throw NotFoundError("model: '" + id_or_path +
                        "' is neither a builtin id nor a readable file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_pair_from_json(buf.str());
}

}  // namespace cdoc
