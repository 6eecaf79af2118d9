#pragma once

namespace twinfock {

/// A detection probability and its phase derivatives at one phase setting.
///
/// `complement` is 1 - probability evaluated in a cancellation-free form, so
/// that P(1-P) stays accurate where P approaches 0 or 1.
struct ProbabilityJet {
  double probability = 0.0;
  double complement = 1.0;
  double first = 0.0;   // dP/dphi
  double second = 0.0;  // d2P/dphi2
  /// Bound on the rounding error of `first`; slopes below it are zero.
  double first_error = 0.0;
};

}  // namespace twinfock
