// Acceptance checks. One line per criterion; exit status is the number of
// failures (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "twinfock/experiment.hpp"
#include "twinfock/interference_models.hpp"
#include "twinfock/metrology.hpp"
#include "twinfock/projection.hpp"

using namespace twinfock;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

std::vector<double> grid(double start, double stop, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(start + (stop - start) * i / (points - 1));
  return out;
}

// 1
Outcome n1_at_origin() {
  const double d = phase_uncertainty(DetectionModel::twin_fock(1), 0.0).delta_phi;
  return {std::abs(d - 0.5) <= 1e-9, fmt("dphi(0)=%.12g target 0.5 tol 1e-9", d)};
}

// 2
Outcome n2_at_origin() {
  const double d = phase_uncertainty(DetectionModel::twin_fock(2), 0.0).delta_phi;
  const double target = 1.0 / std::sqrt(12.0);
  return {std::abs(d - target) <= 1e-6, fmt("dphi(0)=%.12g target %.12g tol 1e-6", d, target)};
}

// 3
Outcome closed_vs_constructive() {
  double worst = 0.0;
  const auto phis = grid(0.0, pi, 101);
  for (std::size_t n = 1; n <= 50; ++n) {
    for (double phi : phis) {
      worst = std::max(worst, std::abs(projection_closed_form(n, phi) - projection_constructive(n, phi)));
    }
  }
  return {worst < 1e-10, fmt("max |closed - constructive| = %.3g over N<=50 x 101 phases, tol 1e-10", worst)};
}

// 4
Outcome curvature_identity() {
  double worst_curvature = 0.0;  // in units of N^2
  double worst_dphi = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const double nd = static_cast<double>(n);
    const double h = 1e-3 / nd;
    const double second =
        (projection_closed_form(n, h) - 2.0 * projection_closed_form(n, 0.0) + projection_closed_form(n, -h)) /
        (h * h);
    worst_curvature = std::max(worst_curvature, std::abs(-0.5 * second - (nd * nd + nd) / 2.0) / (nd * nd));
    const double d = phase_uncertainty(DetectionModel::twin_fock(n), 0.0).delta_phi;
    worst_dphi = std::max(worst_dphi, std::abs(d - 1.0 / std::sqrt(2.0 * nd * (nd + 1.0))));
  }
  return {worst_curvature <= 1e-4 && worst_dphi <= 1e-9,
          fmt("max |-P''(0)/2 - (N^2+N)/2|/N^2 = %.3g (tol 1e-4), max dphi(0) error = %.3g (tol 1e-9)",
              worst_curvature, worst_dphi)};
}

// 5
Outcome scaling() {
  const auto rows = scan_photon_number(200);
  const auto& a = rows[99];
  const auto& b = rows[199];
  const double slope = std::log(b.delta_phi / a.delta_phi) /
                       std::log(static_cast<double>(b.n_total) / static_cast<double>(a.n_total));
  const double ratio = b.delta_phi * static_cast<double>(b.n_total);
  return {slope > -1.01 && slope < -0.99 && ratio >= 1.40 && ratio <= 1.4142,
          fmt("slope %.6f in (-1.01, -0.99); dphi(0)*2N at N=200 = %.6f in [1.40, 1.4142]", slope, ratio)};
}

// 6
Outcome four_photon() {
  const auto model = DetectionModel::four_photon(0.93);
  double at_k_pi = 0.0;
  for (int k = 0; k <= 2; ++k) {
    at_k_pi = std::max(at_k_pi, phase_uncertainty(model, k * pi).delta_phi);
  }
  double grid_min = 1e300;
  for (double phi : grid(0.0, pi, 2001)) {
    grid_min = std::min(grid_min, phase_uncertainty(model, phi).delta_phi);
  }
  const double minimum_at_origin = std::abs(grid_min - at_k_pi) <= 1e-12 ? 1.0 : 0.0;
  const double distinguishable = phase_uncertainty(DetectionModel::four_photon(0.0), 0.0).delta_phi;
  double ideal_gap = 0.0;
  for (double phi : grid(-pi, pi, 1001)) {
    const double ideal = 0.75 * std::cos(2 * phi) + 0.25;
    ideal_gap = std::max(ideal_gap, std::abs(p4_model(1.0, phi) - ideal * ideal));
  }
  const bool pass = std::abs(at_k_pi - 0.2904) <= 0.001 && minimum_at_origin == 1.0 &&
                    std::abs(distinguishable - 0.3536) <= 0.001 && ideal_gap <= 1e-12;
  return {pass, fmt("E/A=0.93 min dphi=%.6f at k*pi (target 0.2904+-0.001); E/A=0 dphi(0)=%.6f "
                    "(target 0.3536+-0.001); E/A=1 max |P4 - ideal| = %.3g (tol 1e-12)",
                    at_k_pi, distinguishable, ideal_gap)};
}

// 7
Outcome sql_boundary() {
  const auto b = beating_region(DetectionModel::four_photon(0.93), 4);
  const bool pass = b.status == RegionStatus::Crossing && std::abs(b.boundary - 0.885) <= 0.005;
  return {pass, "status " + to_string(b.status) + fmt(", boundary %.6f target 0.885+-0.005", b.boundary)};
}

// 8
Outcome two_photon() {
  const double d = phase_uncertainty(DetectionModel::two_photon(0.953), 0.0).delta_phi;
  const double sql = limits(2).sql;
  return {std::abs(d - 0.506) <= 0.001 && d < sql,
          fmt("V=0.953 dphi(0)=%.6f target 0.506+-0.001; SQL(2)=%.6f", d, sql)};
}

// 9
Outcome loss_invariance() {
  const std::vector<DetectionModel> models{
      DetectionModel::twin_fock(1),      DetectionModel::twin_fock(2),
      DetectionModel::twin_fock(10),     DetectionModel::twin_fock(50),
      DetectionModel::two_photon(0.953), DetectionModel::four_photon(0.93)};
  double worst = 0.0;
  bool divergence_agrees = true;
  for (const auto& model : models) {
    for (double phi : grid(0.0, pi, 721)) {
      const auto reference = phase_uncertainty(model, phi, 1.0);
      for (double eta : {0.1, 0.5, 0.9, 1.0}) {
        const auto lossy = phase_uncertainty(model, phi, eta);
        if (reference.divergent() || lossy.divergent()) {
          divergence_agrees = divergence_agrees && reference.divergent() == lossy.divergent();
          continue;
        }
        worst = std::max(worst, std::abs(lossy.delta_phi - reference.delta_phi));
      }
    }
  }
  return {worst <= 1e-12 && divergence_agrees,
          fmt("max deviation %.3g over 6 models x 721 phases, tol 1e-12", worst) +
              (divergence_agrees ? "" : "; divergence markers differ")};
}

// 10
struct CoverageStats {
  int covered = 0;
  double mean_error = 0.0;
  double mean_estimate = 0.0;
};

CoverageStats coverage(const DetectionModel& truth, FitKind kind, double rate, double exposure) {
  const auto phis = grid(0.0, pi, 25);
  CoverageStats s;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto fit = fit_model(synthesize_counts(truth, rate, phis, exposure, seed), kind);
    if (std::abs(fit.shape.estimate - truth.parameter()) <= 2.0 * fit.shape.std_error) ++s.covered;
    s.mean_error += fit.shape.std_error / 100.0;
    s.mean_estimate += fit.shape.estimate / 100.0;
  }
  return s;
}

Outcome fit_recovery() {
  const auto two = coverage(DetectionModel::two_photon(0.953), FitKind::P2, 8837.0, 1.0);
  const auto four = coverage(DetectionModel::four_photon(0.93), FitKind::P4, 3.75, 100.0);
  const bool pass = two.covered >= 90 && four.covered >= 90 && four.mean_error >= 0.015 &&
                    four.mean_error <= 0.06;
  return {pass, fmt("p2 coverage %.0f/100 (mean sigma %.4f); p4 coverage %.0f/100 (need >= 90), ",
                    two.covered, two.mean_error, four.covered) +
                    fmt("p4 mean sigma %.4f in [0.015, 0.06], p4 mean estimate %.4f", four.mean_error,
                        four.mean_estimate)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
  double time_limit_ms;  // <= 0: none
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "twin-Fock N=1 uncertainty at origin", n1_at_origin, 1.0},
      {2, "twin-Fock N=2 uncertainty at origin", n2_at_origin, 1.0},
      {3, "closed-form vs constructive projection", closed_vs_constructive, 10000.0},
      {4, "curvature vs photon-number variance", curvature_identity, 0.0},
      {5, "Heisenberg scaling of dphi(0)", scaling, 1000.0},
      {6, "four-photon distinguishability model", four_photon, 0.0},
      {7, "SQL-beating boundary, E/A=0.93", sql_boundary, 0.0},
      {8, "two-photon visibility model", two_photon, 0.0},
      {9, "loss invariance", loss_invariance, 0.0},
      {10, "fit recovery and coverage", fit_recovery, 60000.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = c.check();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bool pass = outcome.pass;
    if (c.time_limit_ms > 0.0 && ms >= c.time_limit_ms) {
      pass = false;
      outcome.detail += fmt("; too slow (limit %.0f ms)", c.time_limit_ms);
    }
    if (!pass) ++failures;
    std::printf("%s %2d  %s: %s [%.3f ms]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), ms);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
