#include "twinfock/detail/bessel.hpp"

#include <algorithm>
#include <cmath>

#include "twinfock/error.hpp"

namespace twinfock::detail {

std::vector<double> bessel_j_sequence(double x, std::size_t max_order) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_j_sequence: argument must be finite and non-negative");
  }
  std::vector<double> out(max_order + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }

  // Start far enough above both the requested order and the turning point
  // k = x that the discarded dominant solution has died out.
  std::size_t start = std::max(max_order, static_cast<std::size_t>(std::ceil(x))) + 20 +
                      static_cast<std::size_t>(std::ceil(10.0 * std::cbrt(x)));
  if (start % 2 == 1) ++start;

  std::vector<double> j(start + 2, 0.0);
  j[start] = 1e-300;
  constexpr double kRescaleAbove = 1e250;
  for (std::size_t k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * static_cast<double>(k) / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > kRescaleAbove) {
      for (std::size_t m = k - 1; m <= start; ++m) j[m] /= kRescaleAbove;
    }
  }

  double norm = j[0];
  for (std::size_t m = 2; m <= start; m += 2) norm += 2.0 * j[m];
  for (std::size_t k = 0; k <= max_order; ++k) out[k] = j[k] / norm;
  return out;
}

}  // namespace twinfock::detail
