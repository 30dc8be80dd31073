// adiabatic.hpp — slow-driving expansion of the fluxes in powers of Omega
// built from the frozen density of states, and the Joule-law analysis.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "acflux/flux_engine.hpp"
#include "acflux/model.hpp"

namespace acflux {

// First- and second-order terms at one instant. At T = 0 the derivative of
// the Fermi function acts as -delta(eps - mu) and everything is closed form;
// at T > 0 the energy integrals run over mu +- 40 T.
struct AdiabaticTerms {
    double ic1 = 0.0, ic2 = 0.0;
    double q1 = 0.0, q2 = 0.0;
    double wt1 = 0.0, wt2 = 0.0;
    double we1 = 0.0, we2 = 0.0;
    double p_lowfreq = 0.0;
};

AdiabaticTerms adiabatic_terms(double t, const ModelParams& p, const QuadratureConfig& cfg = {});

double ic1(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double ic2(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double q1(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double q2(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double wt1(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double wt2(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double we1(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double we2(double t, const ModelParams& p, const QuadratureConfig& cfg = {});
double p_lowfreq(double t, const ModelParams& p, const QuadratureConfig& cfg = {});

struct JouleFit {
    double slope = 0.0;         // least squares through the origin
    double max_residual = 0.0;  // max |q - slope * i^2|
    std::size_t points = 0;
};

// Fits q_dot = R i_c^2. Throws DegenerateFit if i_c vanishes identically.
JouleFit joule_fit(std::span<const double> q_dot, std::span<const double> i_c);

// Points with |ic1| below this fraction of max |ic1| are gaps in R~(t).
inline constexpr double kRTildeMask = 1e-6;

// R~(t_k) = q_tilde_dot_k / ic1_k^2, empty where ic1 is masked.
std::vector<std::optional<double>> r_tilde_series(std::span<const double> q_tilde_dot, std::span<const double> ic1);

// Point form with the exact engine; nullopt near the drive extrema.
std::optional<double> r_tilde(double t, const ModelParams& p, const EngineConfig& cfg);

struct AdiabaticReport {
    ModelParams params;
    std::vector<double> times;
    std::vector<double> ic1, ic2, q1, q2, wt1, wt2, we1, we2, p_lowfreq;
    JouleFit r_fit;
    std::vector<std::optional<double>> r_tilde;
    bool exact_inputs = false;  // r_fit and r_tilde use the exact trace
};

// With an exact trace on the same grid, r_fit fits its Qdot against its I_C
// and R~ uses its Qtilde_dot; otherwise both use the expansion itself.
AdiabaticReport adiabatic_report(const ModelParams& p, const QuadratureConfig& cfg, int n_times,
                                 const FluxTrace* exact = nullptr, int threads = 1);

} // namespace acflux
