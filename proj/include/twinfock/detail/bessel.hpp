#pragma once

#include <cstddef>
#include <vector>

namespace twinfock::detail {

/// J_0(x) .. J_max_order(x) for x >= 0 by Miller's backward recurrence,
/// normalized with J_0 + 2 sum_k J_2k = 1.
std::vector<double> bessel_j_sequence(double x, std::size_t max_order);

}  // namespace twinfock::detail
