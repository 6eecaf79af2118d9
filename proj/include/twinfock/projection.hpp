#pragma once

#include <cstddef>

#include "twinfock/probability_jet.hpp"

namespace twinfock {

/// Largest N accepted by projection_constructive.
inline constexpr std::size_t kMaxConstructivePairs = 2000;

/// Probability of the projection onto the unshifted 2N-photon state,
///   P(phi) = { sum_k w_k cos[(2k - N) phi] }^2.
double projection_closed_form(std::size_t n_pairs, double phi);

/// Same quantity with analytic first and second derivatives.
ProbabilityJet projection_closed_form_jet(std::size_t n_pairs, double phi);

/// Projection realized as optics: build the state, shift the up mode by phi,
/// recombine on a second balanced splitter and read off the (N, N)
/// coincidence probability.
double projection_constructive(std::size_t n_pairs, double phi);

/// A projection probability together with the overall success factor that
/// photon loss and detector inefficiency impose on the measured rate.
class ProjectionOutcome {
 public:
  explicit ProjectionOutcome(double probability, double success_scale = 1.0);

  double probability() const { return probability_; }
  double success_scale() const { return success_scale_; }
  double scaled_probability() const { return probability_ * success_scale_; }

 private:
  double probability_;
  double success_scale_;
};

/// Loss with efficiency eta multiplies the success factor by eta^2; the
/// probability itself is untouched. Throws DomainError unless 0 < eta <= 1.
ProjectionOutcome apply_loss(const ProjectionOutcome& outcome, double eta);

}  // namespace twinfock
