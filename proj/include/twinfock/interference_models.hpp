#pragma once

#include "twinfock/probability_jet.hpp"

namespace twinfock {

/// Two-photon coincidence probability with finite visibility V in [0, 1]:
///   P2(phi) = (1 + V cos 2phi) / (1 + V).
double p2_model(double visibility, double phi);
ProbabilityJet p2_jet(double visibility, double phi);
/// dP2/dV, used by the fitter.
double p2_parameter_derivative(double visibility, double phi);

/// Four-photon coincidence probability for two down-converted pairs with
/// indistinguishability r = E/A in [0, 1]:
///   P4(phi) = [(1+2r)(3cos4phi + 4cos2phi) + 9 + 2r] / (16 + 16r).
/// r = 1 reproduces the ideal N = 2 projection.
double p4_model(double r, double phi);
ProbabilityJet p4_jet(double r, double phi);
/// dP4/dr, used by the fitter.
double p4_parameter_derivative(double r, double phi);

namespace detail {
// Unchecked evaluations, defined for any parameter > -1. The fitter explores
// values slightly outside [0, 1] before flagging them.
ProbabilityJet p2_jet_unchecked(double visibility, double phi);
ProbabilityJet p4_jet_unchecked(double r, double phi);
}  // namespace detail

}  // namespace twinfock
