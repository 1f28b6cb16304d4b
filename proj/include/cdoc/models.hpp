#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "cdoc/response.hpp"
#include "cdoc/twoport.hpp"

namespace cdoc {

// Named box-bounded parameter vector space.
struct ParamSpace {
  std::vector<std::string> names;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(names.size()); }
  // DomainError listing every offending entry.
  void check(const Eigen::VectorXd& x, const std::string& what) const;
};

enum class ElementRole { design, auxiliary, hidden };

struct ModelElement {
  ElementKind kind = ElementKind::series_l;
  std::string name;
  ElementRole role = ElementRole::design;
  double lo = 0.0, hi = 0.0;   // design / auxiliary bounds
  double value = 0.0;          // hidden: the fixed element value
  double hidden_value = 0.0;   // auxiliary: the fine-model truth
  double start = 0.0;          // auxiliary: coarse-model starting value
};

// Coarse/fine evaluator pair sharing design parameters x_c; the coarse
// model additionally exposes auxiliary parameters x_a. The built-in fine
// model is the same evaluator with x_a pinned to hidden values, so
// fine_eval(x) == coarse_eval(x, hidden_aux) holds exactly by construction.
class ModelPair {
 public:
  std::string id;
  ParamSpace design;
  ParamSpace aux;
  Eigen::VectorXd hidden_aux;
  Eigen::VectorXd aux_start;
  ObjectiveSpec default_spec;

  using EvalFn =
      std::function<ResponseCurve(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

  ModelPair() = default;
  ModelPair(std::string model_id, ParamSpace design_space, ParamSpace aux_space,
            Eigen::VectorXd hidden, Eigen::VectorXd start, ObjectiveSpec spec,
            EvalFn eval);

  ResponseCurve coarse_eval(const Eigen::VectorXd& x_c, const Eigen::VectorXd& x_a) const;
  ResponseCurve fine_eval(const Eigen::VectorXd& x_c) const;

 private:
  EvalFn eval_;
};

// 81 points spanning the band widened by 20 % on each side.
Eigen::VectorXd default_freq_grid(double f_lo, double f_hi, int points = 81);

// Built-in pairs, graded by difficulty:
//   toy       1-D quadratic pair, response (x - a)^2 on every sample
//   lcmatch   3-element LC ladder with hidden port parasitics
//   twostage  8-element two-stage ladder, gain and noise constraints
ModelPair make_toy_pair();
ModelPair make_lc_pair();
ModelPair make_twostage_pair();

// Builtin id or a path to a model definition file.
ModelPair load_model_pair(const std::string& id_or_path);

// JSON model schema: {"model_id", "z0", "freq": {"start_hz","stop_hz","points"},
//  "objective": {...}, "elements": [{"kind","name","role",...}]}.
// Roles: "design" (bounds lo/hi), "auxiliary" (bounds plus hidden_value and
// optional start), "hidden" (fixed value present in both models).
ModelPair model_pair_from_json(const std::string& json_text);

}  // namespace cdoc
