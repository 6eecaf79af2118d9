#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "twinfock/metrology.hpp"

namespace twinfock {

/// One coincidence-count measurement at a phase-shifter setting.
struct CountRecord {
  double phi = 0.0;
  std::uint64_t counts = 0;
  double exposure = 1.0;  // seconds, or any consistent unit
};

enum class FitKind { P2, P4 };

struct FitResult {
  std::string parameter_name;  // "V", "E_over_A" or "rate"
  double estimate = 0.0;
  double std_error = 0.0;
  double reduced_chi_square = 0.0;
  std::size_t n_points = 0;
  bool out_of_range = false;  // estimate outside the physical range; reported unclamped
};

struct FitOutcome {
  FitResult shape;
  FitResult rate;
};

/// Poisson variates from a caller-owned engine. Means up to 1000 are drawn
/// exactly by inversion (in chunks of at most 500); larger means use the
/// rounded normal approximation. Only raw 64-bit engine output is consumed,
/// so streams are reproducible across standard libraries.
std::uint64_t sample_poisson(std::mt19937_64& engine, double mean);

/// Counts ~ Poisson(peak_rate * exposure * P(phi)) for each phase in the grid.
std::vector<CountRecord> synthesize_counts(const DetectionModel& model, double peak_rate,
                                           std::span<const double> phi_grid, double exposure,
                                           std::mt19937_64& engine);
std::vector<CountRecord> synthesize_counts(const DetectionModel& model, double peak_rate,
                                           std::span<const double> phi_grid, double exposure,
                                           std::uint64_t seed);

/// Weighted least squares
///   min over (rate, theta) of sum_i (c_i - rate e_i P(phi_i; theta))^2 / max(c_i, 1)
/// where theta is V (P2) or E/A (P4). Standard errors come from the inverse of
/// the Gauss-Newton curvature of the objective at the optimum.
/// Throws FitError on degenerate input.
FitOutcome fit_model(std::span<const CountRecord> records, FitKind kind);

/// (C_max - C_min) / (C_max + C_min) over exposure-normalized rates.
double visibility(std::span<const CountRecord> records);

std::string to_string(FitKind kind);

}  // namespace twinfock
