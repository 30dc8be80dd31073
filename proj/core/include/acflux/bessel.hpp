// bessel.hpp — integer-order Bessel functions J_m(x) by downward recurrence.

#pragma once

#include <vector>

namespace acflux {

// J_0(x) ... J_{max_order}(x) for x >= 0. Values are obtained by Miller's
// downward recurrence started well above max(max_order, x) and normalised by
// the sum rule J_0^2 + 2 * sum_{m>=1} J_m^2 = 1 (sign fixed by
// J_0 + 2 * sum J_{2k} = 1). Negative orders follow from J_{-m} = (-1)^m J_m.
std::vector<double> bessel_j_table(int max_order, double x);

// Starting index used for the recurrence; exposed for tests.
int bessel_recurrence_start(int max_order, double x);

} // namespace acflux
