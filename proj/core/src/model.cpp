// model.cpp — driven resonant level: parameters, units, frozen quantities.

#include "acflux/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acflux/errors.hpp"

namespace acflux {

double ModelParams::min_cutoff() const {
    return 10.0 * std::max({std::abs(epsilon0) + v_ac, std::abs(mu), gamma});
}

double ModelParams::cutoff() const {
    return band_cutoff > 0.0 ? band_cutoff : 2.0 * min_cutoff();
}

void ModelParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(epsilon0) || !finite(v_ac) || !finite(omega) || !finite(gamma) ||
        !finite(mu) || !finite(temperature) || !finite(band_cutoff)) {
        throw InvalidParams("model parameters must be finite");
    }
    if (!(gamma > 0.0)) throw InvalidParams("gamma must be positive");
    if (!(omega > 0.0)) throw InvalidParams("omega must be positive");
    if (v_ac < 0.0) throw InvalidParams("v_ac must be non-negative");
    if (temperature < 0.0) throw InvalidParams("temperature must be non-negative");
    if (band_cutoff < 0.0) throw InvalidParams("band_cutoff must be non-negative");
    if (band_cutoff > 0.0 && !(band_cutoff > min_cutoff())) {
        throw InvalidParams("band_cutoff " + std::to_string(band_cutoff) +
                            " must exceed 10*max(|epsilon0|+v_ac, |mu|, gamma) = " +
                            std::to_string(min_cutoff()));
    }
}

double level_energy(double t, const ModelParams& p) {
    return p.epsilon0 + p.v_ac * std::cos(p.omega * t);
}

double level_velocity(double t, const ModelParams& p) {
    return -p.v_ac * p.omega * std::sin(p.omega * t);
}

double level_acceleration(double t, const ModelParams& p) {
    return -p.v_ac * p.omega * p.omega * std::cos(p.omega * t);
}

double fermi(double eps, const ModelParams& p) {
    const double x = eps - p.mu;
    if (p.temperature == 0.0) {
        if (x < 0.0) return 1.0;
        if (x > 0.0) return 0.0;
        return 0.5;
    }
    const double y = x / p.temperature;
    // Split on sign so exp never overflows.
    if (y > 0.0) {
        const double e = std::exp(-y);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(y));
}

double fermi_derivative(double eps, const ModelParams& p) {
    if (p.temperature == 0.0) return 0.0;
    const double y = std::abs(eps - p.mu) / p.temperature;
    const double e = std::exp(-y);
    return -e / (p.temperature * (1.0 + e) * (1.0 + e));
}

complex frozen_green(double t, double eps, const ModelParams& p) {
    return 1.0 / complex(eps - level_energy(t, p), 0.5 * p.gamma);
}

double frozen_dos(double t, double eps, const ModelParams& p) {
    return p.gamma * std::norm(frozen_green(t, eps, p));
}

double frozen_dos_from_imag(double t, double eps, const ModelParams& p) {
    return -2.0 * frozen_green(t, eps, p).imag();
}

} // namespace acflux
