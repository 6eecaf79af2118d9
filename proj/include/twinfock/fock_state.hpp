#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace twinfock {

using Complex = std::complex<double>;

enum class Mode { U, D };

/// Pure state of two bosonic modes with a fixed total photon number n.
///
/// Amplitude j belongs to the basis vector |j>_u |n-j>_d, so the basis is
/// ordered by ascending occupation of the up mode. Construction checks that
/// the amplitudes are normalized to within kNormTolerance.
class TwoModeState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Takes ownership of `amplitudes`; total photon number is size() - 1.
  explicit TwoModeState(std::vector<Complex> amplitudes);

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static TwoModeState normalized(std::vector<Complex> amplitudes);

  /// Number state |u>_u |d>_d.
  static TwoModeState basis(std::size_t up, std::size_t down);

  std::size_t total_photons() const { return amplitudes_.size() - 1; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t up_occupation) const {
    return amplitudes_[up_occupation];
  }
  double norm_squared() const;

 private:
  struct Unchecked {};
  TwoModeState(Unchecked, std::vector<Complex> amplitudes)
      : amplitudes_(std::move(amplitudes)) {}

  std::vector<Complex> amplitudes_;

  friend TwoModeState apply_phase_shift(const TwoModeState&, double, Mode);
  friend TwoModeState apply_50_50_bs(const TwoModeState&);
};

struct PhotonMoments {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
};

/// Largest N accepted by twin_fock_after_bs.
inline constexpr std::size_t kMaxTwinFockPairs = 1'000'000;

/// Weights w_k = C(2k,k) C(2N-2k,N-k) / 4^N for k = 0..N. They sum to one.
std::vector<double> twin_fock_weights(std::size_t n_pairs);

/// The 2N-photon state produced by a 50:50 splitter fed with |N,N>.
/// Nonzero amplitudes sit at even up-occupations 2k with value
/// (-1)^(N-k) sqrt(w_k).
TwoModeState twin_fock_after_bs(std::size_t n_pairs);

/// exp(i phi n_mode): amplitude j picks up exp(i j phi) for Mode::U and
/// exp(i (n-j) phi) for Mode::D.
TwoModeState apply_phase_shift(const TwoModeState& state, double phi, Mode mode);

/// Balanced beam splitter a_u -> (a_u + a_d)/sqrt2, a_d -> (a_u - a_d)/sqrt2.
///
/// The transformation is an involution. It is applied as a sign flip on the
/// down mode followed by exp(pi/4 G) with G = a_d^dag a_u - a_u^dag a_d,
/// the exponential being evaluated by a Chebyshev expansion of the
/// tridiagonal generator. Cost is O(n^2) for n photons.
TwoModeState apply_50_50_bs(const TwoModeState& state);

/// <a|b>. Throws DomainError on mismatched photon numbers.
Complex inner_product(const TwoModeState& a, const TwoModeState& b);

PhotonMoments photon_number_moments(const TwoModeState& state, Mode mode);

}  // namespace twinfock
