// floquet_green.hpp — exact retarded Green function of the harmonically
// driven level in the mixed time-energy representation.
//
// With alpha = V_ac / (hbar Omega) the two-time solution gives
//
//   G^r(t, eps) = exp(-i alpha sin(Omega t))
//                 * sum_m J_m(alpha) exp(i m Omega t) / (eps - eps0 - m Omega + i Gamma/2)
//
// i.e. at fixed t a sum of simple poles z_m = eps0 + m Omega - i Gamma/2 with
// weights c_m(t). Its Floquet harmonics, G^r(t, eps) = sum_n exp(-i n Omega t) G(n, eps),
// are G(n, eps) = sum_m J_{n+m} J_m / (eps - z_m).

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "acflux/energy_grid.hpp"
#include "acflux/model.hpp"
#include "acflux/quadrature.hpp"

namespace acflux {

struct TruncationPolicy {
    double tol = 1e-12;
    int n_max_override = 0;  // 0 selects the Bessel turnover rule

    // n_max = ceil(alpha + 8 alpha^(1/3) + 20) unless overridden.
    int n_max(double alpha) const;
    void validate() const;
};

// The Green function at a fixed time as a pole sum in energy.
class PoleSnapshot {
public:
    double time() const { return time_; }
    std::size_t size() const { return pole_.size(); }
    double half_gamma() const { return half_gamma_; }

    double pole_position(std::size_t i) const { return pole_[i]; }  // Re z_m
    complex weight(std::size_t i) const { return {c_re_[i], c_im_[i]}; }
    // c_m * (m Omega - V cos Omega t), the weights of dG/dt
    complex rate_weight(std::size_t i) const { return {cd_re_[i], cd_im_[i]}; }

    complex green(double eps) const;
    // dG/dt = -i [1 - (eps - eps_d + i Gamma/2) G] = i sum_m c_m d_m / (eps - z_m)
    complex green_dt(double eps) const;
    void evaluate(double eps, complex& g, complex& g_dt) const;

private:
    friend class DrivenLevelSeries;
    double time_ = 0.0;
    double half_gamma_ = 0.5;
    double far_field_ = 0.0;  // |eps| beyond which the sum-rule form is used
    complex sum_c_{};  // sum_m c_m as stored (1 up to rounding)
    std::vector<double> pole_;
    std::vector<double> c_re_, c_im_, cd_re_, cd_im_;
};

// Bessel coefficients for one scenario; produces snapshots at any time.
class DrivenLevelSeries {
public:
    // Throws TruncationUnconverged if max |J_{+-n_max}(alpha)| exceeds pol.tol
    // and check_tail is set.
    DrivenLevelSeries(const ModelParams& p, const TruncationPolicy& pol, bool check_tail = true);

    const ModelParams& params() const { return params_; }
    int n_max() const { return n_max_; }
    double alpha() const { return params_.alpha(); }
    // J_m(alpha) for |m| <= 2 n_max, zero beyond.
    double bessel(int m) const;
    double tail_magnitude() const;

    PoleSnapshot snapshot(double t) const;

private:
    ModelParams params_;
    int n_max_ = 0;
    std::vector<double> bessel_;  // J_0 .. J_{2 n_max}
};

complex green_time_energy(double t, double eps, const ModelParams& p, const TruncationPolicy& pol);
complex green_time_derivative(double t, double eps, const ModelParams& p, const TruncationPolicy& pol);

// Independent route: adaptive quadrature of
//   int_0^tau_max dtau exp(i eps tau) (-i) exp(-i int_{t-tau}^t eps_d) exp(-Gamma tau / 2)
// with tau_max = 2 ln(1/quad_tol) / Gamma (neglected tail <= 2 quad_tol / Gamma).
complex green_oracle(double t, double eps, const ModelParams& p, double quad_tol);

// Energy integrals of the time-domain Green function at one instant, each
// split into the panel part on [-D, top] and the mapped (-inf, -D] tail.
struct SpectralIntegrals {
    double occupation = 0.0;          // n_d = int deps/2pi f Gamma |G|^2
    double occupation_rate = 0.0;     // dn_d/dt = int deps/2pi f Gamma 2 Re(G* dG/dt)
    double contact_flux = 0.0;        // W_T = 2 Re int deps/h dG/dt Gamma f
    double occupation_tail = 0.0;
    double occupation_rate_tail = 0.0;
    double contact_flux_tail = 0.0;
    int evaluations = 0;
};

SpectralIntegrals spectral_integrals(const PoleSnapshot& snap, const ModelParams& p,
                                     const EnergyGrid& grid, const AdaptiveOptions& opt);

double occupation_nd(double t, const ModelParams& p, const TruncationPolicy& pol, const EnergyGrid& grid,
                     const AdaptiveOptions& opt = {});

// Floquet harmonics G(n, eps), |n| <= n_max, tabulated on a grid.
class FloquetHarmonics {
public:
    const ModelParams& params() const { return params_; }
    int n_max() const { return n_max_; }
    const EnergyGrid& grid() const { return grid_; }
    std::size_t width() const { return static_cast<std::size_t>(2 * n_max_ + 1); }

    complex coeff(int n, std::size_t node) const;
    std::span<const complex> row(std::size_t node) const;  // index n + n_max

    // Closed-form evaluation at an arbitrary energy (not tabulated).
    void evaluate(double eps, std::span<complex> out) const;
    complex evaluate(int n, double eps) const;

    // sum_n exp(-i n Omega t) G(n, eps) at a grid node.
    complex reconstruct(double t, std::size_t node) const;

    double bessel(int m) const;

private:
    friend FloquetHarmonics harmonics_unchecked(const ModelParams&, const TruncationPolicy&, const EnergyGrid&);
    ModelParams params_;
    int n_max_ = 0;
    EnergyGrid grid_;
    std::vector<double> bessel_;  // J_0 .. J_{2 n_max}
    std::vector<complex> table_;  // node-major
};

inline constexpr double kHarmonicAlphaLimit = 200.0;

// Throws AlphaTooLarge above kHarmonicAlphaLimit and TruncationUnconverged if
// the Bessel tail or the sum rule sum_m J_m^2 = 1 fails at pol.tol.
FloquetHarmonics harmonics(const ModelParams& p, const TruncationPolicy& pol, const EnergyGrid& grid);
// Same table without the truncation gates (used to diagnose bad overrides).
FloquetHarmonics harmonics_unchecked(const ModelParams& p, const TruncationPolicy& pol, const EnergyGrid& grid);

// Grid suited to sideband sums: panel edges at mu + k hbar Omega for |k| <= n_max + 1
// and refinement over the driven resonance band.
EnergyGrid sideband_grid(const ModelParams& p, int n_max, const GridSpec& spec = {});

} // namespace acflux
