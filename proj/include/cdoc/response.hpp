#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace cdoc {

// Frequency-sampled multichannel response. "s21_db" is the primary gain
// channel; surrogate models may add others (e.g. "nf_db").
struct ResponseCurve {
  Eigen::VectorXd freq_hz;  // strictly ascending
  std::map<std::string, Eigen::VectorXd> channels;

  void validate() const;  // grid ascending, channel lengths equal
};

enum class Relation { ge, le };

struct Constraint {
  std::string channel;
  Relation relation = Relation::ge;
  double target = 0.0;
  double weight = 1.0;
};

struct ObjectiveSpec {
  double f_lo = 0.0;
  double f_hi = 0.0;
  std::vector<Constraint> constraints;

  void validate() const;  // f_lo < f_hi, weights > 0
};

// Hinge-loss sum over in-band samples: weight * max(0, violation) for each
// constraint and sample. Zero exactly when every constraint is met, which
// makes feasibility a crisp exit test. Band outside the grid span is a
// domain error.
double objective(const ResponseCurve& resp, const ObjectiveSpec& spec);

ObjectiveSpec objective_spec_from_json(const std::string& json_text);
std::string objective_spec_to_json(const ObjectiveSpec& spec);

}  // namespace cdoc
