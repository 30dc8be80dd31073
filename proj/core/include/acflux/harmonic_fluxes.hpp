// harmonic_fluxes.hpp — fluxes as Fourier series built from the Floquet
// harmonics G(n, eps); the independent cross-check of the time-domain path.

#pragma once

#include <vector>

#include "acflux/flux_engine.hpp"
#include "acflux/floquet_green.hpp"

namespace acflux {

// X(t) = Re sum_{|l| <= l_max} exp(-i l Omega t) coeff[l + l_max]
struct HarmonicSeries {
    double omega = 0.0;
    int l_max = 0;
    std::vector<complex> coeff;

    double operator()(double t) const;
    // Imaginary part of the partial sum at t; zero up to rounding for a consistent table.
    double imag_part(double t) const;
    double mean() const { return coeff.empty() ? 0.0 : coeff[static_cast<std::size_t>(l_max)].real(); }
};

struct HarmonicFluxes {
    HarmonicSeries i_c;  // charge current, Fourier form of I_C
    HarmonicSeries w_c;  // reservoir energy flux, Fourier form of W_C
    HarmonicSeries w_t;  // contact energy flux
};

// Integrals run over the harmonics grid plus its mapped lower tail; the grid
// should have panel edges at mu + k hbar Omega (see sideband_grid).
HarmonicFluxes harmonic_fluxes(const FloquetHarmonics& h);

struct PathComparison {
    double max_abs_diff = 0.0;
    double max_abs_value = 0.0;
    double relative() const { return max_abs_value > 0.0 ? max_abs_diff / max_abs_value : max_abs_diff; }
};

// Time-domain vs harmonic path on n_times points of one period.
struct DualPathReport {
    PathComparison i_c;
    PathComparison w_c;
    PathComparison w_t;
    double harmonic_conservation = 0.0;  // max |W_C + W_T + W_D| / max |W_D| on the harmonic path
};

DualPathReport compare_paths(const ModelParams& p, const EngineConfig& cfg, int n_times);

// Throws PathMismatch if any relative difference exceeds tol.
void require_paths_agree(const DualPathReport& r, double tol);

} // namespace acflux
