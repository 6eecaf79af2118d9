#include "twinfock/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "twinfock/detail/bessel.hpp"
#include "twinfock/error.hpp"

namespace twinfock {

namespace {

long double sum_of_squares(std::span<const Complex> amplitudes) {
  long double total = 0.0L;
  for (const auto& a : amplitudes) total += static_cast<long double>(std::norm(a));
  return total;
}

// Threshold above which the weight recurrence is carried in logarithms.
constexpr std::size_t kLogDomainAbove = 30;

}  // namespace

TwoModeState::TwoModeState(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) {
    throw DomainError("TwoModeState: amplitude vector must hold total_photons + 1 entries");
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw DomainError("TwoModeState: non-finite amplitude");
    }
  }
  const double norm = static_cast<double>(sum_of_squares(amplitudes_));
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw DomainError("TwoModeState: amplitudes not normalized (norm^2 = " +
                      std::to_string(norm) + ")");
  }
}

TwoModeState TwoModeState::normalized(std::vector<Complex> amplitudes) {
  const long double norm = std::sqrt(sum_of_squares(amplitudes));
  if (!(norm > 0.0L) || !std::isfinite(static_cast<double>(norm))) {
    throw DomainError("TwoModeState::normalized: cannot normalize a zero or non-finite vector");
  }
  for (auto& a : amplitudes) a = Complex(static_cast<double>(a.real() / norm),
                                         static_cast<double>(a.imag() / norm));
  return TwoModeState(std::move(amplitudes));
}

TwoModeState TwoModeState::basis(std::size_t up, std::size_t down) {
  std::vector<Complex> amplitudes(up + down + 1, Complex{});
  amplitudes[up] = 1.0;
  return TwoModeState(Unchecked{}, std::move(amplitudes));
}

double TwoModeState::norm_squared() const {
  return static_cast<double>(sum_of_squares(amplitudes_));
}

std::vector<double> twin_fock_weights(std::size_t n_pairs) {
  if (n_pairs == 0 || n_pairs > kMaxTwinFockPairs) {
    throw DomainError("twin_fock_weights: N must lie in [1, " +
                      std::to_string(kMaxTwinFockPairs) + "], got " + std::to_string(n_pairs));
  }
  const std::size_t n = n_pairs;
  std::vector<double> w(n + 1);
  const std::size_t half = n / 2;

  // w_0 = C(2N,N)/4^N = prod_{m<N} (2m+1)/(2m+2)
  // w_{k+1}/w_k = (2k+1)(N-k) / ((k+1)(2N-2k-1))
  if (n <= kLogDomainAbove) {
    double wk = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
      wk *= static_cast<double>(2 * m + 1) / static_cast<double>(2 * m + 2);
    }
    for (std::size_t k = 0; k <= half; ++k) {
      w[k] = wk;
      wk *= static_cast<double>((2 * k + 1) * (n - k)) /
            static_cast<double>((k + 1) * (2 * n - 2 * k - 1));
    }
  } else {
    double log_wk = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      log_wk += std::log1p(-1.0 / static_cast<double>(2 * m + 2));
    }
    for (std::size_t k = 0; k <= half; ++k) {
      w[k] = std::exp(log_wk);
      const double kd = static_cast<double>(k);
      const double nd = static_cast<double>(n);
      log_wk += std::log((2.0 * kd + 1.0) * (nd - kd)) -
                std::log((kd + 1.0) * (2.0 * nd - 2.0 * kd - 1.0));
    }
  }
  for (std::size_t k = half + 1; k <= n; ++k) w[k] = w[n - k];

  long double total = 0.0L;
  for (double x : w) total += x;
  for (double& x : w) x = static_cast<double>(x / total);
  return w;
}

TwoModeState twin_fock_after_bs(std::size_t n_pairs) {
  const auto w = twin_fock_weights(n_pairs);
  std::vector<Complex> amplitudes(2 * n_pairs + 1, Complex{});
  for (std::size_t k = 0; k <= n_pairs; ++k) {
    const double sign = ((n_pairs - k) % 2 == 0) ? 1.0 : -1.0;
    amplitudes[2 * k] = sign * std::sqrt(w[k]);
  }
  return TwoModeState(std::move(amplitudes));
}

TwoModeState apply_phase_shift(const TwoModeState& state, double phi, Mode mode) {
  if (!std::isfinite(phi)) throw DomainError("apply_phase_shift: phase must be finite");
  const std::size_t n = state.total_photons();
  std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t occupation = (mode == Mode::U) ? j : n - j;
    out[j] *= std::polar(1.0, static_cast<double>(occupation) * phi);
  }
  return TwoModeState(TwoModeState::Unchecked{}, std::move(out));
}

TwoModeState apply_50_50_bs(const TwoModeState& state) {
  const std::size_t n = state.total_photons();
  std::vector<Complex> v(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t j = 0; j <= n; ++j) {
    if ((n - j) % 2 == 1) v[j] = -v[j];
  }
  if (n == 0) return TwoModeState(TwoModeState::Unchecked{}, std::move(v));

  // exp(theta G) = exp(i lambda B) with B = -i G / n (spectrum in [-1, 1])
  // and lambda = theta n. Jacobi-Anger:
  //   exp(i lambda B) = J_0(lambda) + 2 sum_k i^k J_k(lambda) T_k(B).
  const double nd = static_cast<double>(n);
  const double lambda = std::numbers::pi / 4.0 * nd;
  const auto max_order =
      static_cast<std::size_t>(std::ceil(lambda + 15.0 * std::cbrt(lambda) + 40.0));
  const auto bessel = detail::bessel_j_sequence(lambda, max_order);

  // hop[j] = sqrt((j+1)(n-j)) couples j and j+1.
  std::vector<double> hop(n);
  for (std::size_t j = 0; j < n; ++j) {
    hop[j] = std::sqrt(static_cast<double>(j + 1) * static_cast<double>(n - j));
  }
  const Complex minus_i_over_n(0.0, -1.0 / nd);
  auto apply_b = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
    for (std::size_t j = 0; j <= n; ++j) {
      Complex g{};
      if (j < n) g += hop[j] * x[j + 1];
      if (j > 0) g -= hop[j - 1] * x[j - 1];
      y[j] = minus_i_over_n * g;
    }
  };

  std::vector<Complex> result(n + 1);
  std::vector<Complex> prev = v;
  std::vector<Complex> cur(n + 1);
  std::vector<Complex> next(n + 1);
  apply_b(prev, cur);
  for (std::size_t j = 0; j <= n; ++j) {
    result[j] = bessel[0] * prev[j] + Complex(0.0, 2.0 * bessel[1]) * cur[j];
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t k = 2; k <= max_order; ++k) {
    apply_b(cur, next);
    const Complex coeff = 2.0 * bessel[k] * kIPow[k % 4];
    for (std::size_t j = 0; j <= n; ++j) {
      next[j] = 2.0 * next[j] - prev[j];
      result[j] += coeff * next[j];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return TwoModeState(TwoModeState::Unchecked{}, std::move(result));
}

Complex inner_product(const TwoModeState& a, const TwoModeState& b) {
  if (a.total_photons() != b.total_photons()) {
    throw DomainError("inner_product: states hold " + std::to_string(a.total_photons()) +
                      " and " + std::to_string(b.total_photons()) + " photons");
  }
  Complex total{};
  for (std::size_t j = 0; j < a.amplitudes().size(); ++j) {
    total += std::conj(a[j]) * b[j];
  }
  return total;
}

PhotonMoments photon_number_moments(const TwoModeState& state, Mode mode) {
  const std::size_t n = state.total_photons();
  long double mean = 0.0L;
  long double second = 0.0L;
  for (std::size_t j = 0; j <= n; ++j) {
    const auto occupation = static_cast<long double>(mode == Mode::U ? j : n - j);
    const auto prob = static_cast<long double>(std::norm(state[j]));
    mean += occupation * prob;
    second += occupation * occupation * prob;
  }
  PhotonMoments m;
  m.mean = static_cast<double>(mean);
  m.second_moment = static_cast<double>(second);
  m.variance = std::max(0.0, static_cast<double>(second - mean * mean));
  return m;
}

}  // namespace twinfock
