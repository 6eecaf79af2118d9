#include "twinfock/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "twinfock/error.hpp"
#include "twinfock/interference_models.hpp"

namespace twinfock {

namespace {

double uniform_open_closed(std::mt19937_64& engine) {
  // (0, 1] with 53 random bits.
  return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t poisson_by_inversion(std::mt19937_64& engine, double mean) {
  const double u = uniform_open_closed(engine);
  double term = std::exp(-mean);
  double cumulative = term;
  std::uint64_t k = 0;
  const double cap = mean + 40.0 * std::sqrt(mean) + 100.0;
  while (u > cumulative && static_cast<double>(k) < cap) {
    ++k;
    term *= mean / static_cast<double>(k);
    cumulative += term;
  }
  return k;
}

constexpr double kNormalApproximationAbove = 1000.0;
constexpr double kInversionChunk = 500.0;

struct ModelSample {
  double p;
  double dp_dtheta;
};

ModelSample evaluate(FitKind kind, double theta, double phi) {
  if (kind == FitKind::P2) {
    return {detail::p2_jet_unchecked(theta, phi).probability, p2_parameter_derivative(theta, phi)};
  }
  return {detail::p4_jet_unchecked(theta, phi).probability, p4_parameter_derivative(theta, phi)};
}

class WeightedProblem {
 public:
  WeightedProblem(std::span<const CountRecord> records, FitKind kind)
      : records_(records), kind_(kind), weights_(records.size()) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      weights_[i] = 1.0 / std::max(static_cast<double>(records[i].counts), 1.0);
    }
  }

  // Rate minimizing the objective at fixed theta (linear least squares).
  double best_rate(double theta) const {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const double x = records_[i].exposure * evaluate(kind_, theta, records_[i].phi).p;
      num += weights_[i] * static_cast<double>(records_[i].counts) * x;
      den += weights_[i] * x * x;
    }
    return den > 0.0 ? num / den : 0.0;
  }

  double objective(double rate, double theta) const {
    double total = 0.0;
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const double model = rate * records_[i].exposure * evaluate(kind_, theta, records_[i].phi).p;
      const double r = static_cast<double>(records_[i].counts) - model;
      total += weights_[i] * r * r;
    }
    return total;
  }

  double profiled(double theta) const { return objective(best_rate(theta), theta); }

  // Gauss-Newton normal matrix J^T W J and gradient J^T W r for (rate, theta).
  void normal_equations(double rate, double theta, std::array<double, 3>& jtj,
                        std::array<double, 2>& jtr) const {
    jtj = {0.0, 0.0, 0.0};
    jtr = {0.0, 0.0};
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto s = evaluate(kind_, theta, records_[i].phi);
      const double e = records_[i].exposure;
      const double ja = e * s.p;
      const double jt = rate * e * s.dp_dtheta;
      const double r = static_cast<double>(records_[i].counts) - rate * ja;
      const double w = weights_[i];
      jtj[0] += w * ja * ja;
      jtj[1] += w * ja * jt;
      jtj[2] += w * jt * jt;
      jtr[0] += w * ja * r;
      jtr[1] += w * jt * r;
    }
  }

 private:
  std::span<const CountRecord> records_;
  FitKind kind_;
  std::vector<double> weights_;
};

double golden_section_minimum(const WeightedProblem& problem, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = problem.profiled(c);
  double fd = problem.profiled(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = problem.profiled(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = problem.profiled(d);
    }
  }
  return 0.5 * (a + b);
}

// Search window for the shape parameter. Both models stay finite for any
// value above -1, so estimates just outside [0, 1] can be reported and flagged.
constexpr double kThetaLow = -0.5;
constexpr double kThetaHigh = 1.5;
constexpr int kThetaGrid = 400;

}  // namespace

std::uint64_t sample_poisson(std::mt19937_64& engine, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("sample_poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;
  if (mean > kNormalApproximationAbove) {
    const double u1 = uniform_open_closed(engine);
    const double u2 = uniform_open_closed(engine);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    const double draw = std::round(mean + std::sqrt(mean) * z);
    return draw <= 0.0 ? 0 : static_cast<std::uint64_t>(draw);
  }
  // A sum of independent Poisson variates is Poisson; chunking keeps exp(-mean)
  // well away from underflow.
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = std::min(remaining, kInversionChunk);
    total += poisson_by_inversion(engine, chunk);
    remaining -= chunk;
  }
  return total;
}

std::vector<CountRecord> synthesize_counts(const DetectionModel& model, double peak_rate,
                                           std::span<const double> phi_grid, double exposure,
                                           std::mt19937_64& engine) {
  if (phi_grid.empty()) throw DomainError("synthesize_counts: phase grid is empty");
  if (!(peak_rate > 0.0) || !std::isfinite(peak_rate)) {
    throw DomainError("synthesize_counts: peak rate must be positive");
  }
  if (!(exposure > 0.0) || !std::isfinite(exposure)) {
    throw DomainError("synthesize_counts: exposure must be positive");
  }
  std::vector<CountRecord> records;
  records.reserve(phi_grid.size());
  for (double phi : phi_grid) {
    const double p = std::clamp(model.probability(phi), 0.0, 1.0);
    records.push_back(CountRecord{phi, sample_poisson(engine, peak_rate * exposure * p), exposure});
  }
  return records;
}

std::vector<CountRecord> synthesize_counts(const DetectionModel& model, double peak_rate,
                                           std::span<const double> phi_grid, double exposure,
                                           std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return synthesize_counts(model, peak_rate, phi_grid, exposure, engine);
}

FitOutcome fit_model(std::span<const CountRecord> records, FitKind kind) {
  if (records.size() < 5) throw FitError("fit_model: need at least 5 records");
  bool any_counts = false;
  bool distinct_phases = false;
  for (const auto& r : records) {
    if (!(r.exposure > 0.0) || !std::isfinite(r.exposure) || !std::isfinite(r.phi)) {
      throw DomainError("fit_model: records need finite phase and positive exposure");
    }
    any_counts = any_counts || r.counts > 0;
    distinct_phases = distinct_phases || r.phi != records.front().phi;
  }
  if (!any_counts) throw FitError("fit_model: all counts are zero");
  if (!distinct_phases) throw FitError("fit_model: all records share one phase setting");

  const WeightedProblem problem(records, kind);

  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  const double step = (kThetaHigh - kThetaLow) / kThetaGrid;
  for (int i = 0; i <= kThetaGrid; ++i) {
    const double value = problem.profiled(kThetaLow + step * i);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  double theta = golden_section_minimum(problem, kThetaLow + step * std::max(best - 1, 0),
                                        kThetaLow + step * std::min(best + 1, kThetaGrid));
  double rate = problem.best_rate(theta);
  double value = problem.objective(rate, theta);

  std::array<double, 3> jtj{};
  std::array<double, 2> jtr{};
  for (int it = 0; it < 20; ++it) {
    problem.normal_equations(rate, theta, jtj, jtr);
    const double det = jtj[0] * jtj[2] - jtj[1] * jtj[1];
    if (!(det > 0.0)) break;
    const double d_rate = (jtj[2] * jtr[0] - jtj[1] * jtr[1]) / det;
    const double d_theta = (jtj[0] * jtr[1] - jtj[1] * jtr[0]) / det;
    const double trial = problem.objective(rate + d_rate, theta + d_theta);
    if (!(trial <= value)) break;
    rate += d_rate;
    theta += d_theta;
    const bool converged = value - trial <= 1e-14 * std::max(value, 1.0);
    value = trial;
    if (converged) break;
  }

  problem.normal_equations(rate, theta, jtj, jtr);
  const double det = jtj[0] * jtj[2] - jtj[1] * jtj[1];
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw FitError("fit_model: curvature matrix is singular; the data do not constrain the model");
  }
  const double var_rate = jtj[2] / det;
  const double var_theta = jtj[0] / det;
  const double reduced_chi2 = value / static_cast<double>(records.size() - 2);

  FitOutcome out;
  out.shape.parameter_name = (kind == FitKind::P2) ? "V" : "E_over_A";
  out.shape.estimate = theta;
  out.shape.std_error = std::sqrt(std::max(var_theta, 0.0));
  out.shape.reduced_chi_square = reduced_chi2;
  out.shape.n_points = records.size();
  out.shape.out_of_range = theta < 0.0 || theta > 1.0;

  out.rate.parameter_name = "rate";
  out.rate.estimate = rate;
  out.rate.std_error = std::sqrt(std::max(var_rate, 0.0));
  out.rate.reduced_chi_square = reduced_chi2;
  out.rate.n_points = records.size();
  out.rate.out_of_range = rate < 0.0;
  return out;
}

double visibility(std::span<const CountRecord> records) {
  if (records.size() < 2) throw DomainError("visibility: need at least 2 records");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    if (!(r.exposure > 0.0)) throw DomainError("visibility: exposure must be positive");
    const double rate = static_cast<double>(r.counts) / r.exposure;
    lo = std::min(lo, rate);
    hi = std::max(hi, rate);
  }
  if (hi + lo <= 0.0) return 0.0;
  return (hi - lo) / (hi + lo);
}

std::string to_string(FitKind kind) { return kind == FitKind::P2 ? "p2" : "p4"; }

}  // namespace twinfock
