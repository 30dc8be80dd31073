// bessel.cpp — Miller downward recurrence for J_m(x).

#include "acflux/bessel.hpp"

#include <cmath>
#include <string>

#include "acflux/errors.hpp"

namespace acflux {

int bessel_recurrence_start(int max_order, double x) {
    // Beyond the turning point m ~ x, J_m decays like an Airy tail on the scale
    // x^(1/3); 25 such widths put the seed far below double precision.
    const double turn = std::max(static_cast<double>(max_order), x);
    const double width = std::cbrt(std::max(x, 1.0));
    int start = static_cast<int>(std::ceil(turn + 25.0 * width + std::sqrt(40.0 * (turn + 1.0)))) + 10;
    if (start % 2 == 1) ++start;
    return start;
}

std::vector<double> bessel_j_table(int max_order, double x) {
    if (max_order < 0) throw InvalidParams("bessel_j_table: negative order");
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidParams("bessel_j_table: x must be finite and >= 0");
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }

    const int start = bessel_recurrence_start(max_order, x);
    // Extended precision: over ~x oscillatory steps the recurrence error grows
    // linearly, which in double would cost ~x * 1e-16 relative.
    using real = long double;
    constexpr real kBig = 1e100L;  // squares must stay finite in sum_sq
    const real xl = x;
    std::vector<real> acc(out.size(), 0.0L);
    real next = 0.0L;      // J_{m+1}
    real cur = 1.0L;       // J_m, arbitrary seed
    real sum_sq = 0.0L;    // sum over m >= 1 of J_m^2 (unnormalised)
    real sum_even = 0.0L;  // sum over even m >= 2 of J_m
    for (int m = start; m >= 1; --m) {
        const real prev = (2.0L * m / xl) * cur - next;  // J_{m-1}
        next = cur;
        cur = prev;
        // next now holds J_m
        if (m <= max_order) acc[static_cast<std::size_t>(m)] = next;
        sum_sq += next * next;
        if (m % 2 == 0) sum_even += next;
        if (std::abs(cur) > kBig) {
            cur /= kBig;
            next /= kBig;
            sum_sq /= kBig * kBig;
            sum_even /= kBig;
            for (int k = m; k <= max_order; ++k) acc[static_cast<std::size_t>(k)] /= kBig;
        }
    }
    const real j0 = cur;
    const real norm_sq = j0 * j0 + 2.0L * sum_sq;
    const real sign = (j0 + 2.0L * sum_even) >= 0.0L ? 1.0L : -1.0L;
    const real scale = sign / std::sqrt(norm_sq);
    out[0] = static_cast<double>(j0 * scale);
    for (int m = 1; m <= max_order; ++m) out[static_cast<std::size_t>(m)] = static_cast<double>(acc[static_cast<std::size_t>(m)] * scale);
    return out;
}

} // namespace acflux
