#include "twinfock/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "twinfock/error.hpp"
#include "twinfock/interference_models.hpp"
#include "twinfock/projection.hpp"

namespace twinfock {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ProbabilityJet mes_jet(std::size_t n_photons, double phi) {
  if (!std::isfinite(phi)) throw DomainError("phase must be finite");
  const double n = static_cast<double>(n_photons);
  const double c = std::cos(0.5 * n * phi);
  const double s = std::sin(0.5 * n * phi);
  ProbabilityJet jet;
  jet.probability = c * c;
  jet.complement = s * s;
  jet.first = -0.5 * n * std::sin(n * phi);
  jet.second = -0.5 * n * n * std::cos(n * phi);
  jet.first_error = 4.0 * std::numeric_limits<double>::epsilon() * n * (1.0 + std::abs(n * phi));
  return jet;
}

// Below this, sqrt(P(1-P)) is treated as vanishing: P is then within ~1e-150
// of 0 or 1, hence within ~1e-75 of a stationary point, and the limit value is
// exact to double precision.
constexpr double kStationaryNumerator = 1e-150;

// A slope within rounding of zero only signals a divergence when P is well
// inside (0, 1); next to P = 0 or 1 slope and spread shrink together and
// their ratio stays accurate.
constexpr double kInteriorSpread = 1e-8;

}  // namespace

DetectionModel DetectionModel::twin_fock(std::size_t n_pairs) {
  if (n_pairs == 0) throw DomainError("twin-Fock model needs N >= 1");
  return DetectionModel(TwinFock{n_pairs});
}

DetectionModel DetectionModel::mes(std::size_t n_photons) {
  if (n_photons == 0) throw DomainError("MES model needs N >= 1");
  return DetectionModel(Mes{n_photons});
}

DetectionModel DetectionModel::two_photon(double visibility) {
  p2_jet(visibility, 0.0);  // validates the range
  return DetectionModel(TwoPhoton{visibility});
}

DetectionModel DetectionModel::four_photon(double r) {
  p4_jet(r, 0.0);
  return DetectionModel(FourPhoton{r});
}

ModelKind DetectionModel::kind() const {
  return std::visit(Overloaded{
                        [](const TwinFock&) { return ModelKind::TwinFockClosedForm; },
                        [](const Mes&) { return ModelKind::Mes; },
                        [](const TwoPhoton&) { return ModelKind::TwoPhotonVisibility; },
                        [](const FourPhoton&) { return ModelKind::FourPhotonDistinguishability; },
                    },
                    model_);
}

double DetectionModel::parameter() const {
  return std::visit(Overloaded{
                        [](const TwinFock& m) { return static_cast<double>(m.n_pairs); },
                        [](const Mes& m) { return static_cast<double>(m.n_photons); },
                        [](const TwoPhoton& m) { return m.visibility; },
                        [](const FourPhoton& m) { return m.r; },
                    },
                    model_);
}

std::size_t DetectionModel::photons_per_event() const {
  return std::visit(Overloaded{
                        [](const TwinFock& m) { return 2 * m.n_pairs; },
                        [](const Mes& m) { return m.n_photons; },
                        [](const TwoPhoton&) { return std::size_t{2}; },
                        [](const FourPhoton&) { return std::size_t{4}; },
                    },
                    model_);
}

std::string DetectionModel::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const TwinFock& m) { out << "twin-fock(N=" << m.n_pairs << ")"; },
                 [&](const Mes& m) { out << "mes(N=" << m.n_photons << ")"; },
                 [&](const TwoPhoton& m) { out << "p2(V=" << m.visibility << ")"; },
                 [&](const FourPhoton& m) { out << "p4(E/A=" << m.r << ")"; },
             },
             model_);
  return out.str();
}

ProbabilityJet DetectionModel::evaluate(double phi) const {
  return std::visit(Overloaded{
                        [phi](const TwinFock& m) { return projection_closed_form_jet(m.n_pairs, phi); },
                        [phi](const Mes& m) { return mes_jet(m.n_photons, phi); },
                        [phi](const TwoPhoton& m) { return p2_jet(m.visibility, phi); },
                        [phi](const FourPhoton& m) { return p4_jet(m.r, phi); },
                    },
                    model_);
}

MetrologyPoint phase_uncertainty(const DetectionModel& model, double phi, double eta) {
  const ProbabilityJet jet = model.evaluate(phi);
  const double p = std::clamp(jet.probability, 0.0, 1.0);
  const double q = std::clamp(jet.complement, 0.0, 1.0);
  const double scale = apply_loss(ProjectionOutcome(p), eta).success_scale();

  MetrologyPoint point;
  point.phi = phi;
  point.p = p;
  point.dp_dphi = jet.first;

  // Measured rate M = scale * P: Delta M = scale sqrt(P(1-P)), |dM| = scale |P'|.
  const double spread = std::sqrt(p) * std::sqrt(q);
  if (spread < kStationaryNumerator) {
    const double c = 0.5 * std::abs(jet.second);
    point.delta_phi = (c > 0.0) ? 1.0 / (2.0 * std::sqrt(c)) : kDivergentUncertainty;
    return point;
  }
  const double numerator = std::sqrt(scale * scale * p * q);
  const double slope = scale * std::abs(jet.first);
  if (slope == 0.0) return point;
  if (spread > kInteriorSpread && std::abs(jet.first) <= jet.first_error) return point;
  const double ratio = numerator / slope;
  point.delta_phi = std::isfinite(ratio) ? ratio : kDivergentUncertainty;
  return point;
}

double twin_fock_uncertainty_at_zero(std::size_t n_pairs) {
  if (n_pairs == 0) throw DomainError("twin_fock_uncertainty_at_zero: N must be >= 1");
  const double n = static_cast<double>(n_pairs);
  return 1.0 / std::sqrt(2.0 * n * (n + 1.0));
}

LimitPair limits(std::size_t n_total) {
  if (n_total == 0) throw DomainError("limits: photon number must be >= 1");
  const double n = static_cast<double>(n_total);
  return LimitPair{n_total, 1.0 / std::sqrt(n), 1.0 / n};
}

std::vector<ScanRow> scan_photon_number(std::size_t n_pairs_max) {
  if (n_pairs_max == 0) throw DomainError("scan_photon_number: N_max must be >= 1");
  std::vector<ScanRow> rows;
  rows.reserve(n_pairs_max);
  for (std::size_t n = 1; n <= n_pairs_max; ++n) {
    const LimitPair lp = limits(2 * n);
    rows.push_back(ScanRow{n, 2 * n, twin_fock_uncertainty_at_zero(n), lp.sql, lp.hl});
  }
  return rows;
}

RegionBoundary beating_region(const DetectionModel& model, std::size_t n_total,
                              double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("beating_region: tolerance must be positive");
  const double sql = limits(n_total).sql;
  RegionBoundary result;
  result.sql = sql;

  // Divergent points compare as +inf, i.e. above the SQL.
  auto excess = [&](double phi) { return phase_uncertainty(model, phi).delta_phi - sql; };

  if (excess(0.0) >= 0.0) {
    result.status = RegionStatus::NotBeatingAtOrigin;
    return result;
  }

  constexpr int kScanSteps = 4096;
  const double edge = std::numbers::pi / 2.0;
  double lo = 0.0;
  for (int i = 1; i <= kScanSteps; ++i) {
    const double hi = edge * static_cast<double>(i) / kScanSteps;
    if (excess(hi) >= 0.0) {
      double a = lo;
      double b = hi;
      while (b - a > tolerance) {
        const double mid = 0.5 * (a + b);
        if (excess(mid) < 0.0) {
          a = mid;
        } else {
          b = mid;
        }
      }
      result.status = RegionStatus::Crossing;
      result.boundary = 0.5 * (a + b);
      return result;
    }
    lo = hi;
  }
  result.status = RegionStatus::EverywhereBelow;
  result.boundary = edge;
  return result;
}

std::string to_string(RegionStatus status) {
  switch (status) {
    case RegionStatus::Crossing:
      return "crossing";
    case RegionStatus::EverywhereBelow:
      return "everywhere-below";
    case RegionStatus::NotBeatingAtOrigin:
      return "not-beating-at-origin";
  }
  return "unknown";
}

}  // namespace twinfock
