#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace cdoc {

enum class ElementKind { series_r, series_l, series_c, shunt_r, shunt_l, shunt_c };

ElementKind element_kind_from_string(const std::string& s);
std::string to_string(ElementKind kind);

// One lumped element in a cascaded two-port chain. A value of exactly zero
// means the element is absent (identity two-port).
struct CascadeStage {
  ElementKind kind = ElementKind::series_r;
  double value = 0.0;
};

// ABCD matrix of one stage at frequency f.
Eigen::Matrix2cd stage_abcd(const CascadeStage& stage, double freq_hz);

// Chain product over stages, input to output.
Eigen::Matrix2cd cascade_abcd(const std::vector<CascadeStage>& stages, double freq_hz);

// S21 against a real reference impedance: 2 / (A + B/Z0 + C*Z0 + D).
std::complex<double> s21_from_abcd(const Eigen::Matrix2cd& abcd, double z0);

double s21_db(const std::vector<CascadeStage>& stages, double freq_hz, double z0);

// Surrogate noise proxy: 10*log10(1 + sum of per-element dissipation terms
// with fixed element Q). Not a physical noise figure; it exists to give the
// objective a second, monotone channel.
double noise_proxy_db(const std::vector<CascadeStage>& stages, double freq_hz, double z0);

inline constexpr double kDefaultReferenceOhms = 50.0;

}  // namespace cdoc
