#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "twinfock/probability_jet.hpp"

namespace twinfock {

/// Value reported for Delta phi where the slope vanishes but P(1-P) does not.
inline constexpr double kDivergentUncertainty = std::numeric_limits<double>::infinity();

enum class ModelKind { TwinFockClosedForm, Mes, TwoPhotonVisibility, FourPhotonDistinguishability };

/// A detection probability as a function of phase, with analytic derivatives.
class DetectionModel {
 public:
  static DetectionModel twin_fock(std::size_t n_pairs);
  static DetectionModel mes(std::size_t n_photons);
  static DetectionModel two_photon(double visibility);
  static DetectionModel four_photon(double r);

  ModelKind kind() const;
  /// N for the photon-number models, V or E/A for the experimental ones.
  double parameter() const;
  /// Photon number the measurement consumes per detection event.
  std::size_t photons_per_event() const;
  std::string describe() const;

  ProbabilityJet evaluate(double phi) const;
  double probability(double phi) const { return evaluate(phi).probability; }
  double derivative(double phi) const { return evaluate(phi).first; }

 private:
  struct TwinFock { std::size_t n_pairs; };
  struct Mes { std::size_t n_photons; };
  struct TwoPhoton { double visibility; };
  struct FourPhoton { double r; };
  using Variant = std::variant<TwinFock, Mes, TwoPhoton, FourPhoton>;

  explicit DetectionModel(Variant v) : model_(v) {}
  Variant model_;
};

struct MetrologyPoint {
  double phi = 0.0;
  double p = 0.0;
  double dp_dphi = 0.0;
  double delta_phi = kDivergentUncertainty;

  bool divergent() const { return delta_phi == kDivergentUncertainty; }
};

struct LimitPair {
  std::size_t n_total = 1;
  double sql = 1.0;
  double hl = 1.0;
};

/// Error-propagation uncertainty Delta phi = sqrt(P(1-P)) / |dP/dphi|.
///
/// Where P reaches 0 or 1 both numerator and slope vanish; the value there is
/// the limit 1/(2 sqrt(c)) with c = |P''|/2. Where only the slope vanishes the
/// result is kDivergentUncertainty.
///
/// `eta` applies the scalar loss model: the measured rate becomes eta^2 P and
/// its variance eta^4 P(1-P), which leaves Delta phi unchanged.
MetrologyPoint phase_uncertainty(const DetectionModel& model, double phi, double eta = 1.0);

/// 1/sqrt(2N(N+1)), the phi -> 0 value for the twin-Fock projection.
double twin_fock_uncertainty_at_zero(std::size_t n_pairs);

/// Shot-noise and Heisenberg limits 1/sqrt(n) and 1/n.
LimitPair limits(std::size_t n_total);

struct ScanRow {
  std::size_t n_pairs = 0;
  std::size_t n_total = 0;
  double delta_phi = 0.0;
  double sql = 0.0;
  double hl = 0.0;
};

std::vector<ScanRow> scan_photon_number(std::size_t n_pairs_max);

enum class RegionStatus {
  Crossing,            // Delta phi reaches the SQL at `boundary`
  EverywhereBelow,     // no crossing in [0, pi/2]; the whole period beats the SQL
  NotBeatingAtOrigin,  // Delta phi(0) >= SQL
};

struct RegionBoundary {
  RegionStatus status = RegionStatus::NotBeatingAtOrigin;
  double boundary = 0.0;
  double sql = 0.0;
};

/// Smallest phi > 0 with Delta phi(phi) = SQL(n_total), located by a grid
/// scan over [0, pi/2] followed by bisection to `tolerance`. By evenness and
/// pi-periodicity the result describes the regions (k pi - b, k pi + b).
RegionBoundary beating_region(const DetectionModel& model, std::size_t n_total,
                              double tolerance = 1e-6);

std::string to_string(RegionStatus status);

}  // namespace twinfock
