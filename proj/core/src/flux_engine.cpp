// flux_engine.cpp — time-domain flux evaluation and period traces.

#include "acflux/flux_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acflux/errors.hpp"
#include "acflux/harmonic_fluxes.hpp"
#include "acflux/scattering.hpp"

namespace acflux {

void QuadratureConfig::validate(const ModelParams& p) const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidParams("quadrature tolerances must be positive");
    if (max_intervals < 16) throw InvalidParams("quadrature max_intervals must be at least 16");
    if (!(resonance_width > 0.0)) throw InvalidParams("quadrature resonance_width must be positive");
    if (cutoff < 0.0) throw InvalidParams("quadrature cutoff must be non-negative");
    apply(p).validate();
}

ModelParams QuadratureConfig::apply(const ModelParams& p) const {
    ModelParams q = p;
    if (cutoff > 0.0) q.band_cutoff = cutoff;
    return q;
}

void EngineConfig::validate(const ModelParams& p) const {
    quadrature.validate(p);
    truncation.validate();
    if (!(tolerance > 0.0)) throw InvalidParams("engine tolerance must be positive");
    if (threads < 1) throw InvalidParams("threads must be >= 1");
}

namespace {

ModelParams validated(const ModelParams& p, const EngineConfig& cfg) {
    cfg.validate(p);
    return cfg.quadrature.apply(p);
}

} // namespace

TimeDomainEngine::TimeDomainEngine(const ModelParams& p, const EngineConfig& cfg)
    : params_(validated(p, cfg)), config_(cfg), series_(params_, cfg.truncation) {}

PointFluxes TimeDomainEngine::at(double t) const {
    const ModelParams& p = params_;
    const PoleSnapshot snap = series_.snapshot(t);
    const EnergyGrid grid = EnergyGrid::for_time(t, p, series_.n_max(), config_.quadrature.resonance_width,
                                                 config_.quadrature.window_policy);
    const SpectralIntegrals s = spectral_integrals(snap, p, grid, config_.quadrature.adaptive());
    PointFluxes out;
    out.t = t;
    out.n_d = s.occupation;
    out.i_c = -s.occupation_rate;
    out.w_t = s.contact_flux;
    out.w_d = -level_energy(t, p) * out.i_c;
    out.w_c = -out.w_t - out.w_d;
    out.power = out.n_d * level_velocity(t, p);
    out.q_dot = out.w_c + 0.5 * out.w_t - p.mu * out.i_c;
    out.q_tilde_dot = out.w_c - p.mu * out.i_c;
    out.tail_n_d = s.occupation_tail;
    out.tail_i_c = -s.occupation_rate_tail;
    out.tail_w_t = s.contact_flux_tail;
    out.evaluations = s.evaluations;
    return out;
}

namespace {

PointFluxes point(double t, const ModelParams& p, const EngineConfig& cfg) {
    return TimeDomainEngine(p, cfg).at(t);
}

bool harmonic_path_available(const ModelParams& p) { return p.alpha() <= kHarmonicAlphaLimit; }

void cross_check(const ModelParams& p, const EngineConfig& cfg) {
    if (!cfg.cross_check || !harmonic_path_available(p)) return;
    require_paths_agree(compare_paths(p, cfg, 16), 1e-6);
}

} // namespace

double charge_current(double t, const ModelParams& p, const EngineConfig& cfg) {
    cross_check(p, cfg);
    return point(t, p, cfg).i_c;
}

double energy_flux_contact(double t, const ModelParams& p, const EngineConfig& cfg) {
    return point(t, p, cfg).w_t;
}

double energy_flux_dot_level(double t, const ModelParams& p, const EngineConfig& cfg) {
    return point(t, p, cfg).w_d;
}

double energy_flux_reservoir(double t, const ModelParams& p, const EngineConfig& cfg) {
    cross_check(p, cfg);
    return point(t, p, cfg).w_c;
}

double power_source(double t, const ModelParams& p, const EngineConfig& cfg) {
    return point(t, p, cfg).power;
}

double heat_flux(double t, const ModelParams& p, const EngineConfig& cfg) {
    return point(t, p, cfg).q_dot;
}

double heat_flux_tilde(double t, const ModelParams& p, const EngineConfig& cfg) {
    return point(t, p, cfg).q_tilde_dot;
}

std::vector<double> period_grid(const ModelParams& p, int n_times) {
    std::vector<double> t(static_cast<std::size_t>(n_times));
    for (int k = 0; k < n_times; ++k) t[static_cast<std::size_t>(k)] = p.period() * k / n_times;
    return t;
}

double period_mean(const std::vector<double>& series) {
    if (series.empty()) return 0.0;
    double s = 0.0;
    for (double v : series) s += v;
    return s / static_cast<double>(series.size());
}

double max_abs(const std::vector<double>& series) {
    double m = 0.0;
    for (double v : series) m = std::max(m, std::abs(v));
    return m;
}

TraceChecks check_trace(const FluxTrace& tr) {
    TraceChecks c;
    auto ratio = [](double a, double b) { return b > 0.0 ? a / b : a; };
    c.conservation = ratio(max_abs(tr.residual_conservation), max_abs(tr.w_d));
    c.reactance = ratio(max_abs(tr.residual_reactance), max_abs(tr.w_e));
    c.mean_w_t = ratio(std::abs(period_mean(tr.w_t)), max_abs(tr.w_t));
    const double mp = std::abs(period_mean(tr.power));
    c.mean_q_vs_p = ratio(std::abs(period_mean(tr.q_dot) - period_mean(tr.power)), mp);
    c.mean_q_vs_q_tilde = ratio(std::abs(period_mean(tr.q_dot) - period_mean(tr.q_tilde_dot)), mp);
    c.mean_i_c = ratio(std::abs(period_mean(tr.i_c)), max_abs(tr.i_c));
    c.conservation_ok = c.conservation <= tr.tolerance;
    c.mean_w_t_ok = c.mean_w_t <= tr.tolerance;
    return c;
}

FluxTrace trace_period(const ModelParams& p_in, const EngineConfig& cfg, int n_times) {
    if (n_times < 16) throw InvalidParams("trace_period needs n_times >= 16, got " + std::to_string(n_times));
    const TimeDomainEngine engine(p_in, cfg);
    const ModelParams& p = engine.params();

    FluxTrace tr;
    tr.params = p;
    tr.tolerance = cfg.tolerance;
    tr.times = period_grid(p, n_times);
    std::vector<PointFluxes> pts(tr.times.size());
    parallel_for(pts.size(), cfg.threads, [&](std::size_t i) { pts[i] = engine.at(tr.times[i]); });

    const std::size_t n = pts.size();
    for (auto* v : {&tr.i_c, &tr.w_c, &tr.w_t, &tr.w_d, &tr.w_e, &tr.power, &tr.q_dot, &tr.q_tilde_dot, &tr.n_d,
                    &tr.residual_conservation, &tr.residual_reactance}) {
        v->assign(n, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const PointFluxes& f = pts[i];
        tr.i_c[i] = f.i_c;
        tr.w_c[i] = f.w_c;
        tr.w_t[i] = f.w_t;
        tr.w_d[i] = f.w_d;
        tr.power[i] = f.power;
        tr.q_dot[i] = f.q_dot;
        tr.q_tilde_dot[i] = f.q_tilde_dot;
        tr.n_d[i] = f.n_d;
        tr.residual_conservation[i] = f.w_c + f.w_t + f.w_d;
        tr.tail_estimate = std::max({tr.tail_estimate, std::abs(f.tail_n_d), std::abs(f.tail_i_c), std::abs(f.tail_w_t)});
        tr.evaluations += f.evaluations;
    }

    if (harmonic_path_available(p)) {
        const FloquetHarmonics h = harmonics(p, cfg.truncation, sideband_grid(p, cfg.truncation.n_max(p.alpha())));
        const HarmonicSeries we = energy_flux_scattering_series(build_smatrix(h));
        tr.w_e_source = EnergyFluxSource::scattering;
        for (std::size_t i = 0; i < n; ++i) tr.w_e[i] = we(tr.times[i]);
    } else {
        tr.w_e_source = EnergyFluxSource::identity;
        for (std::size_t i = 0; i < n; ++i) tr.w_e[i] = tr.w_c[i] + 0.5 * tr.w_t[i];
    }
    for (std::size_t i = 0; i < n; ++i) tr.residual_reactance[i] = tr.w_e[i] - tr.w_c[i] - 0.5 * tr.w_t[i];
    tr.checks = check_trace(tr);
    return tr;
}

} // namespace acflux
