// flux_engine.hpp — time-resolved charge, energy and heat fluxes of the
// driven level from the exact time-domain Green function.
//
// Sign conventions: I_C = -e dn_d/dt (charge entering the reservoir),
// W_D = -eps_d I_C / e, W_C = -W_T - W_D, P = n_d deps_d/dt,
// Qdot = W_C + W_T/2 - mu I_C / e and Qtilde_dot = W_C - mu I_C / e.

#pragma once

#include <string>
#include <vector>

#include "acflux/energy_grid.hpp"
#include "acflux/floquet_green.hpp"
#include "acflux/model.hpp"
#include "acflux/quadrature.hpp"

namespace acflux {

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    double cutoff = 0.0;  // 0 keeps ModelParams::cutoff()
    int max_intervals = 20000;
    double resonance_width = 10.0;
    GridSpec window_policy{};

    // Throws InvalidParams; the cutoff must satisfy the ModelParams bound.
    void validate(const ModelParams& p) const;
    AdaptiveOptions adaptive() const { return {abs_tol, rel_tol, max_intervals}; }
    // p with band_cutoff replaced by the configured cutoff (if any).
    ModelParams apply(const ModelParams& p) const;
};

struct EngineConfig {
    QuadratureConfig quadrature{};
    TruncationPolicy truncation{};
    double tolerance = 1e-8;  // relative to max |W_D| over the period
    int threads = 1;
    // Cross-check time-domain results against the harmonic path (moderate alpha only).
    bool cross_check = false;

    void validate(const ModelParams& p) const;
};

struct PointFluxes {
    double t = 0.0;
    double n_d = 0.0;
    double i_c = 0.0;
    double w_t = 0.0;
    double w_d = 0.0;
    double w_c = 0.0;
    double power = 0.0;
    double q_dot = 0.0;
    double q_tilde_dot = 0.0;
    // Contributions of the (-inf, -D] band tail.
    double tail_n_d = 0.0;
    double tail_i_c = 0.0;
    double tail_w_t = 0.0;
    int evaluations = 0;
};

// All fluxes at one instant from one pass over the energy axis.
class TimeDomainEngine {
public:
    TimeDomainEngine(const ModelParams& p, const EngineConfig& cfg);

    PointFluxes at(double t) const;
    const ModelParams& params() const { return params_; }
    const EngineConfig& config() const { return config_; }
    const DrivenLevelSeries& series() const { return series_; }

private:
    ModelParams params_;
    EngineConfig config_;
    DrivenLevelSeries series_;
};

double charge_current(double t, const ModelParams& p, const EngineConfig& cfg);
double energy_flux_contact(double t, const ModelParams& p, const EngineConfig& cfg);
double energy_flux_dot_level(double t, const ModelParams& p, const EngineConfig& cfg);
double energy_flux_reservoir(double t, const ModelParams& p, const EngineConfig& cfg);
double power_source(double t, const ModelParams& p, const EngineConfig& cfg);
double heat_flux(double t, const ModelParams& p, const EngineConfig& cfg);
double heat_flux_tilde(double t, const ModelParams& p, const EngineConfig& cfg);

enum class EnergyFluxSource { scattering, identity };

struct TraceChecks {
    double conservation = 0.0;      // max |W_C + W_T + W_D| / max |W_D|
    double reactance = 0.0;         // max |W_E - W_C - W_T/2| / max |W_E|
    double mean_w_t = 0.0;          // |mean W_T| / max |W_T|
    double mean_q_vs_p = 0.0;       // |mean Qdot - mean P| / |mean P|
    double mean_q_vs_q_tilde = 0.0; // |mean Qdot - mean Qtilde_dot| / |mean P|
    double mean_i_c = 0.0;          // |mean I_C| / max |I_C|
    bool conservation_ok = true;
    bool mean_w_t_ok = true;
};

struct FluxTrace {
    ModelParams params;
    std::vector<double> times;
    std::vector<double> i_c, w_c, w_t, w_d, w_e, power, q_dot, q_tilde_dot, n_d;
    std::vector<double> residual_conservation, residual_reactance;
    EnergyFluxSource w_e_source = EnergyFluxSource::identity;
    double tolerance = 1e-8;
    double tail_estimate = 0.0;  // max over t and observables of the band-tail contribution
    long long evaluations = 0;
    TraceChecks checks;

    std::size_t size() const { return times.size(); }
};

// Uniform period grid t_k = k tau / n_times; the rectangle rule on it is the
// period mean used throughout.
std::vector<double> period_grid(const ModelParams& p, int n_times);
double period_mean(const std::vector<double>& series);
double max_abs(const std::vector<double>& series);

// n_times >= 16. W_E comes from the scattering module when alpha allows the
// harmonic path, otherwise from W_C + W_T/2.
FluxTrace trace_period(const ModelParams& p, const EngineConfig& cfg, int n_times);

TraceChecks check_trace(const FluxTrace& trace);

// Deterministic parallel loop: body(i) for i in [0, n), results written by index.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body);

} // namespace acflux

#include "acflux/detail/parallel.hpp"
