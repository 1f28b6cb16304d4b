#include "cdoc/twoport.hpp"

#include <cmath>
#include <numbers>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

constexpr std::complex<double> kJ{0.0, 1.0};
constexpr double kInductorQ = 30.0;
constexpr double kCapacitorQ = 80.0;

std::complex<double> series_impedance(const CascadeStage& stage, double omega) {
  switch (stage.kind) {
    case ElementKind::series_r: return {stage.value, 0.0};
    case ElementKind::series_l: return kJ * (omega * stage.value);
    case ElementKind::series_c: return 1.0 / (kJ * (omega * stage.value));
    default: return {0.0, 0.0};
  }
}

std::complex<double> shunt_admittance(const CascadeStage& stage, double omega) {
  switch (stage.kind) {
    case ElementKind::shunt_r: return {1.0 / stage.value, 0.0};
    case ElementKind::shunt_l: return 1.0 / (kJ * (omega * stage.value));
    case ElementKind::shunt_c: return kJ * (omega * stage.value);
    default: return {0.0, 0.0};
  }
}

bool is_series(ElementKind kind) {
  return kind == ElementKind::series_r || kind == ElementKind::series_l ||
         kind == ElementKind::series_c;
}

}  // namespace

ElementKind element_kind_from_string(const std::string& s) {
  if (s == "series_r") return ElementKind::series_r;
  if (s == "series_l") return ElementKind::series_l;
  if (s == "series_c") return ElementKind::series_c;
  if (s == "shunt_r") return ElementKind::shunt_r;
  if (s == "shunt_l") return ElementKind::shunt_l;
  if (s == "shunt_c") return ElementKind::shunt_c;
  throw ParseError("model: unknown element kind '" + s + "'");
}

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::series_r: return "series_r";
    case ElementKind::series_l: return "series_l";
    case ElementKind::series_c: return "series_c";
    case ElementKind::shunt_r: return "shunt_r";
    case ElementKind::shunt_l: return "shunt_l";
    case ElementKind::shunt_c: return "shunt_c";
  }
  return "series_r";
}

Eigen::Matrix2cd stage_abcd(const CascadeStage& stage, double freq_hz) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  if (stage.value == 0.0) return m;  // zero element vanishes
  const double omega = 2.0 * std::numbers::pi * freq_hz;
  if (is_series(stage.kind)) {
    m(0, 1) = series_impedance(stage, omega);
  } else {
    m(1, 0) = shunt_admittance(stage, omega);
  }
  return m;
}

Eigen::Matrix2cd cascade_abcd(const std::vector<CascadeStage>& stages, double freq_hz) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  for (const auto& stage : stages) m *= stage_abcd(stage, freq_hz);
  return m;
}

std::complex<double> s21_from_abcd(const Eigen::Matrix2cd& abcd, double z0) {
  const std::complex<double> denom =
      abcd(0, 0) + abcd(0, 1) / z0 + abcd(1, 0) * z0 + abcd(1, 1);
  return 2.0 / denom;
}

double s21_db(const std::vector<CascadeStage>& stages, double freq_hz, double z0) {
  return 20.0 * std::log10(std::abs(s21_from_abcd(cascade_abcd(stages, freq_hz), z0)));
}

double noise_proxy_db(const std::vector<CascadeStage>& stages, double freq_hz, double z0) {
  const double omega = 2.0 * std::numbers::pi * freq_hz;
  double loss = 0.0;
  for (const auto& stage : stages) {
    if (stage.value == 0.0) continue;
    switch (stage.kind) {
      case ElementKind::series_r: loss += 0.25 * stage.value / z0; break;
      case ElementKind::shunt_r: loss += 0.25 * z0 / stage.value; break;
      case ElementKind::series_l:
      case ElementKind::shunt_l: loss += omega * stage.value / (kInductorQ * z0); break;
      case ElementKind::series_c:
      case ElementKind::shunt_c: loss += omega * stage.value * z0 / kCapacitorQ; break;
    }
  }
  return 10.0 * std::log10(1.0 + loss);
}

}  // namespace cdoc
