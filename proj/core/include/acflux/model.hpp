// model.hpp — driven resonant level: parameters, units, frozen quantities.
//
// Natural units throughout: hbar = e = Gamma = 1 (Gamma is kept as a field so
// formulas read naturally, but the scenario fixes it to 1). Consequently the
// Planck constant is h = 2*pi and the relaxation resistance quantum is
// R_q = h / (2 e^2) = pi.

#pragma once

#include <complex>
#include <numbers>

namespace acflux {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPlanck = 2.0 * kPi;
inline constexpr double kResistanceQuantum = kPlanck / 2.0;

struct ModelParams {
    double epsilon0 = -1.2;  // bare level
    double v_ac = 10.0;      // drive amplitude
    double omega = 1e-3;     // hbar * Omega
    double gamma = 1.0;      // hybridization width
    double mu = 0.0;         // reservoir chemical potential
    double temperature = 0.0;
    // Half-bandwidth used as the panel-quadrature edge. 0 selects
    // 20 * max(|epsilon0| + v_ac, |mu|, gamma).
    double band_cutoff = 0.0;

    double alpha() const { return v_ac / omega; }
    double period() const { return 2.0 * kPi / omega; }
    double cutoff() const;
    // Smallest admissible cutoff: 10 * max(|epsilon0| + v_ac, |mu|, gamma).
    double min_cutoff() const;

    // Throws InvalidParams when an invariant is violated.
    void validate() const;
};

// epsilon_d(t) = epsilon0 + V_ac cos(Omega t)
double level_energy(double t, const ModelParams& p);
// d epsilon_d / dt
double level_velocity(double t, const ModelParams& p);
// d^2 epsilon_d / dt^2
double level_acceleration(double t, const ModelParams& p);

// Fermi-Dirac occupation; at T = 0 a step with f(mu) = 1/2.
double fermi(double eps, const ModelParams& p);
// d f / d eps for T > 0 (zero for T = 0, where it is a delta function).
double fermi_derivative(double eps, const ModelParams& p);

// G_f(t, eps) = 1 / (eps - epsilon_d(t) + i Gamma/2)
complex frozen_green(double t, double eps, const ModelParams& p);
// rho_f = Gamma |G_f|^2
double frozen_dos(double t, double eps, const ModelParams& p);
// rho_f = -2 Im G_f (same quantity by the other route)
double frozen_dos_from_imag(double t, double eps, const ModelParams& p);

} // namespace acflux
