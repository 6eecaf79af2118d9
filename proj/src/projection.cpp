#include "twinfock/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "twinfock/error.hpp"
#include "twinfock/fock_state.hpp"

namespace twinfock {

namespace {

void require_finite_phase(double phi, const char* where) {
  if (!std::isfinite(phi)) throw DomainError(std::string(where) + ": phase must be finite");
}

}  // namespace

ProbabilityJet projection_closed_form_jet(std::size_t n_pairs, double phi) {
  require_finite_phase(phi, "projection_closed_form");
  const auto w = twin_fock_weights(n_pairs);

  // Overlap amplitude up to a global phase: S = sum_k w_k cos(m_k phi), m_k = 2k - N.
  double s = 0.0;
  double one_minus_s = 0.0;
  double ds = 0.0;
  double d2s = 0.0;
  double ds_error = 0.0;
  for (std::size_t k = 0; k <= n_pairs; ++k) {
    const double m = 2.0 * static_cast<double>(k) - static_cast<double>(n_pairs);
    const double c = std::cos(m * phi);
    const double half_sin = std::sin(0.5 * m * phi);
    s += w[k] * c;
    one_minus_s += 2.0 * w[k] * half_sin * half_sin;
    ds -= w[k] * m * std::sin(m * phi);
    d2s -= w[k] * m * m * c;
    ds_error += w[k] * std::abs(m) * (1.0 + std::abs(m * phi));
  }

  ProbabilityJet jet;
  jet.probability = s * s;
  jet.complement = std::max(0.0, one_minus_s * (2.0 - one_minus_s));
  jet.first = 2.0 * s * ds;
  jet.second = 2.0 * (ds * ds + s * d2s);
  jet.first_error = 16.0 * std::numeric_limits<double>::epsilon() *
                    (ds_error + static_cast<double>(n_pairs));
  return jet;
}

double projection_closed_form(std::size_t n_pairs, double phi) {
  return projection_closed_form_jet(n_pairs, phi).probability;
}

double projection_constructive(std::size_t n_pairs, double phi) {
  require_finite_phase(phi, "projection_constructive");
  if (n_pairs > kMaxConstructivePairs) {
    throw DomainError("projection_constructive: N must not exceed " +
                      std::to_string(kMaxConstructivePairs));
  }
  const auto prepared = twin_fock_after_bs(n_pairs);
  const auto shifted = apply_phase_shift(prepared, phi, Mode::U);
  const auto recombined = apply_50_50_bs(shifted);
  return std::norm(recombined[n_pairs]);
}

ProjectionOutcome::ProjectionOutcome(double probability, double success_scale)
    : probability_(probability), success_scale_(success_scale) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw DomainError("ProjectionOutcome: probability outside [0, 1]");
  }
  if (!(success_scale > 0.0 && success_scale <= 1.0)) {
    throw DomainError("ProjectionOutcome: success scale outside (0, 1]");
  }
}

ProjectionOutcome apply_loss(const ProjectionOutcome& outcome, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("apply_loss: efficiency eta must lie in (0, 1], got " +
                      std::to_string(eta));
  }
  return ProjectionOutcome(outcome.probability(), outcome.success_scale() * eta * eta);
}

}  // namespace twinfock
