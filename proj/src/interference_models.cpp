#include "twinfock/interference_models.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "twinfock/error.hpp"

namespace twinfock {

namespace {

void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
  }
}

void require_finite_phase(double phi) {
  if (!std::isfinite(phi)) throw DomainError("phase must be finite");
}

}  // namespace

namespace detail {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

ProbabilityJet p2_jet_unchecked(double v, double phi) {
  // (1 - V + 2V cos^2 phi)/(1+V) keeps the V = 1 zeros at pi/2 exact.
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double denom = 1.0 + v;
  ProbabilityJet jet;
  jet.probability = ((1.0 - v) + 2.0 * v * c * c) / denom;
  jet.complement = 2.0 * v * s * s / denom;
  jet.first = -2.0 * v * std::sin(2.0 * phi) / denom;
  jet.second = -4.0 * v * std::cos(2.0 * phi) / denom;
  jet.first_error = 8.0 * kEps * (2.0 * std::abs(v) / denom) * (1.0 + std::abs(2.0 * phi));
  return jet;
}

ProbabilityJet p4_jet_unchecked(double r, double phi) {
  // With c = cos 2phi the numerator regroups as
  //   (2/3)(1+2r)(3c+1)^2 + (16/3)(1-r),
  // so P4 = [(1+2r)(3c+1)^2 + 8(1-r)] / (24(1+r)) and
  // 1 - P4 = (1+2r)(6 sin^2 2phi + 8 sin^2 phi) / (16(1+r)).
  const double c2 = std::cos(2.0 * phi);
  const double s1 = std::sin(phi);
  const double s2 = std::sin(2.0 * phi);
  const double s4 = std::sin(4.0 * phi);
  const double c4 = std::cos(4.0 * phi);
  const double a = 1.0 + 2.0 * r;
  const double lin = 3.0 * c2 + 1.0;
  ProbabilityJet jet;
  jet.probability = (a * lin * lin + 8.0 * (1.0 - r)) / (24.0 * (1.0 + r));
  jet.complement = a * (6.0 * s2 * s2 + 8.0 * s1 * s1) / (16.0 * (1.0 + r));
  jet.first = a * (-12.0 * s4 - 8.0 * s2) / (16.0 * (1.0 + r));
  jet.second = a * (-48.0 * c4 - 16.0 * c2) / (16.0 * (1.0 + r));
  jet.first_error = 8.0 * kEps * std::abs(a * 20.0 / (16.0 * (1.0 + r))) *
                    (1.0 + std::abs(4.0 * phi));
  return jet;
}

}  // namespace detail

ProbabilityJet p2_jet(double visibility, double phi) {
  require_unit_interval(visibility, "visibility V");
  require_finite_phase(phi);
  return detail::p2_jet_unchecked(visibility, phi);
}

double p2_model(double visibility, double phi) { return p2_jet(visibility, phi).probability; }

double p2_parameter_derivative(double visibility, double phi) {
  const double denom = 1.0 + visibility;
  return (std::cos(2.0 * phi) - 1.0) / (denom * denom);
}

ProbabilityJet p4_jet(double r, double phi) {
  require_unit_interval(r, "indistinguishability E/A");
  require_finite_phase(phi);
  return detail::p4_jet_unchecked(r, phi);
}

double p4_model(double r, double phi) { return p4_jet(r, phi).probability; }

double p4_parameter_derivative(double r, double phi) {
  const double lin = 3.0 * std::cos(2.0 * phi) + 1.0;
  return (lin * lin - 16.0) / (24.0 * (1.0 + r) * (1.0 + r));
}

}  // namespace twinfock
