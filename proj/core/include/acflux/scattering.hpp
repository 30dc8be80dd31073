// scattering.hpp — Floquet scattering matrix from the Green-function harmonics
// (generalised Fisher-Lee relation) and the scattering-theory energy flux.

#pragma once

#include <vector>

#include "acflux/floquet_green.hpp"
#include "acflux/harmonic_fluxes.hpp"

namespace acflux {

// S^F(eps_m, eps_n) = delta_mn - i Gamma G(m - n, eps_n), eps_n = eps + n hbar Omega.
class FloquetSMatrix {
public:
    const ModelParams& params() const { return harmonics_.params(); }
    int n_max() const { return harmonics_.n_max(); }
    const EnergyGrid& grid() const { return harmonics_.grid(); }
    const FloquetHarmonics& harmonics() const { return harmonics_; }

    // Column n = 0 straight from the table: S^F(eps_m, eps) at a grid node.
    complex amp(int m, std::size_t node) const;
    // Any entry at any base energy (closed-form harmonics).
    complex amp_at(int m, int n, double eps) const;

    // Energies with a stored full block S^F(eps_m, eps_n), |m|, |n| <= n_max.
    const std::vector<double>& sample_energies() const { return samples_; }
    complex block(std::size_t sample, int m, int n) const;

private:
    friend FloquetSMatrix build_smatrix(const FloquetHarmonics& h, double tail_tol);
    FloquetHarmonics harmonics_;
    std::vector<double> samples_;
    std::vector<complex> blocks_;
};

inline constexpr std::size_t kMaxUnitaritySamples = 128;

// Throws TruncationUnconverged when Gamma max |G(+-n_max, eps)| on the grid
// exceeds tail_tol (pass a huge value to inspect a deliberately short table).
FloquetSMatrix build_smatrix(const FloquetHarmonics& h, double tail_tol = 1e-6);

// max over sampled in-window eps and |m| <= n_max of
// |sum_n S*(eps_n, eps) S(eps_n, eps_m) - delta_0m|.
double unitarity_defect(const FloquetSMatrix& s);

// W_E(t) = sum_{n,q} e^{-i n Omega t} int deps (eps_q + eps_{n+q}) / (2h)
//          S*(eps_q, eps) S(eps_{n+q}, eps) [f(eps) - f(eps_q)]
HarmonicSeries energy_flux_scattering_series(const FloquetSMatrix& s);
double energy_flux_scattering(double t, const FloquetSMatrix& s);

} // namespace acflux
