// adiabatic.cpp — frozen-DOS expansion to second order in Omega.

#include "acflux/adiabatic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "acflux/errors.hpp"
#include "acflux/quadrature.hpp"

namespace acflux {

namespace {

// Energy moments against df/deps:
//   a0 = int f' rho, a1 = int f' eps rho, b0 = int f' d/dt[rho^2 v],
//   b1 = int f' eps d/dt[rho^2 v], c = int f' rho^2, e1 = int f' rho u,
//   e2 = int f' d/dt[rho^2 u v], with u = eps - eps_d and v = deps_d/dt.
struct Moments {
    double a0 = 0, a1 = 0, b0 = 0, b1 = 0, c = 0, e1 = 0, e2 = 0;
};

std::array<double, 7> integrands(double eps, double ed, double v, double acc, double gamma) {
    const double u = eps - ed;
    const double rho = gamma / (u * u + 0.25 * gamma * gamma);
    const double r2 = rho * rho;
    const double r3 = r2 * rho;
    const double d1 = 4.0 * u * r3 * v * v / gamma + r2 * acc;
    const double d2 = 4.0 * u * u * r3 * v * v / gamma - r2 * v * v + r2 * u * acc;
    return {rho, eps * rho, d1, eps * d1, r2, rho * u, d2};
}

Moments moments(double t, const ModelParams& p, const QuadratureConfig& cfg) {
    const double ed = level_energy(t, p);
    const double v = level_velocity(t, p);
    const double acc = level_acceleration(t, p);
    Moments m;
    std::array<double, 7> r{};
    if (p.temperature == 0.0) {
        const auto g = integrands(p.mu, ed, v, acc, p.gamma);
        for (std::size_t k = 0; k < 7; ++k) r[k] = -g[k];
    } else {
        const double w = 40.0 * p.temperature;
        const std::array<Segment, 4> segs{Segment::finite(p.mu - w, p.mu - 0.5 * w), Segment::finite(p.mu - 0.5 * w, p.mu),
                                          Segment::finite(p.mu, p.mu + 0.5 * w), Segment::finite(p.mu + 0.5 * w, p.mu + w)};
        auto f = [&](double eps) {
            auto g = integrands(eps, ed, v, acc, p.gamma);
            const double fd = fermi_derivative(eps, p);
            for (auto& x : g) x *= fd;
            return g;
        };
        AdaptiveOptions opt = cfg.adaptive();
        r = integrate_adaptive<7>(f, std::span<const Segment>(segs), opt).value;
    }
    m.a0 = r[0];
    m.a1 = r[1];
    m.b0 = r[2];
    m.b1 = r[3];
    m.c = r[4];
    m.e1 = r[5];
    m.e2 = r[6];
    return m;
}

} // namespace

AdiabaticTerms adiabatic_terms(double t, const ModelParams& p, const QuadratureConfig& cfg) {
    p.validate();
    const Moments m = moments(t, p, cfg);
    const double v = level_velocity(t, p);
    const double ih = 1.0 / kPlanck;
    AdiabaticTerms a;
    a.ic1 = -ih * m.a0 * v;
    a.ic2 = 0.5 * ih * m.b0;
    a.q1 = ih * (p.mu * m.a0 - m.a1) * v;
    a.q2 = -0.5 * ih * ((p.mu * m.b0 - m.b1) + m.c * v * v);
    a.we1 = -ih * m.a1 * v;
    a.we2 = 0.5 * ih * (m.b1 - m.c * v * v);
    a.wt1 = 2.0 * ih * m.e1 * v;
    a.wt2 = -ih * m.e2;
    a.p_lowfreq = -0.5 * ih * m.c * v * v;
    return a;
}

double ic1(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).ic1; }
double ic2(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).ic2; }
double q1(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).q1; }
double q2(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).q2; }
double wt1(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).wt1; }
double wt2(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).wt2; }
double we1(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).we1; }
double we2(double t, const ModelParams& p, const QuadratureConfig& cfg) { return adiabatic_terms(t, p, cfg).we2; }
double p_lowfreq(double t, const ModelParams& p, const QuadratureConfig& cfg) {
    return adiabatic_terms(t, p, cfg).p_lowfreq;
}

JouleFit joule_fit(std::span<const double> q_dot, std::span<const double> i_c) {
    if (q_dot.size() != i_c.size()) throw InvalidParams("joule_fit: series lengths differ");
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < i_c.size(); ++k) {
        const double x = i_c[k] * i_c[k];
        sxx += x * x;
        sxy += x * q_dot[k];
    }
    if (!(sxx > 0.0)) throw DegenerateFit("joule_fit: charge current vanishes at every sample");
    JouleFit fit;
    fit.slope = sxy / sxx;
    fit.points = i_c.size();
    for (std::size_t k = 0; k < i_c.size(); ++k) {
        fit.max_residual = std::max(fit.max_residual, std::abs(q_dot[k] - fit.slope * i_c[k] * i_c[k]));
    }
    return fit;
}

std::vector<std::optional<double>> r_tilde_series(std::span<const double> q_tilde_dot, std::span<const double> ic1) {
    if (q_tilde_dot.size() != ic1.size()) throw InvalidParams("r_tilde: series lengths differ");
    double peak = 0.0;
    for (double x : ic1) peak = std::max(peak, std::abs(x));
    std::vector<std::optional<double>> out(ic1.size());
    for (std::size_t k = 0; k < ic1.size(); ++k) {
        if (std::abs(ic1[k]) >= kRTildeMask * peak && ic1[k] != 0.0) out[k] = q_tilde_dot[k] / (ic1[k] * ic1[k]);
    }
    return out;
}

std::optional<double> r_tilde(double t, const ModelParams& p, const EngineConfig& cfg) {
    const ModelParams q = cfg.quadrature.apply(p);
    const double i1 = ic1(t, q, cfg.quadrature);
    // Scale for the mask: the largest first-order current over the period.
    double peak = 0.0;
    for (double s : period_grid(q, 256)) peak = std::max(peak, std::abs(ic1(s, q, cfg.quadrature)));
    if (std::abs(i1) < kRTildeMask * peak || i1 == 0.0) return std::nullopt;
    return heat_flux_tilde(t, q, cfg) / (i1 * i1);
}

AdiabaticReport adiabatic_report(const ModelParams& p, const QuadratureConfig& cfg, int n_times, const FluxTrace* exact,
                                 int threads) {
    if (n_times < 2) throw InvalidParams("adiabatic_report needs n_times >= 2");
    cfg.validate(p);
    AdiabaticReport r;
    r.params = cfg.apply(p);
    r.times = period_grid(r.params, n_times);
    std::vector<AdiabaticTerms> terms(r.times.size());
    parallel_for(terms.size(), threads, [&](std::size_t i) { terms[i] = adiabatic_terms(r.times[i], r.params, cfg); });
    for (auto* v : {&r.ic1, &r.ic2, &r.q1, &r.q2, &r.wt1, &r.wt2, &r.we1, &r.we2, &r.p_lowfreq}) {
        v->resize(terms.size());
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        r.ic1[i] = terms[i].ic1;
        r.ic2[i] = terms[i].ic2;
        r.q1[i] = terms[i].q1;
        r.q2[i] = terms[i].q2;
        r.wt1[i] = terms[i].wt1;
        r.wt2[i] = terms[i].wt2;
        r.we1[i] = terms[i].we1;
        r.we2[i] = terms[i].we2;
        r.p_lowfreq[i] = terms[i].p_lowfreq;
    }
    if (exact != nullptr) {
        if (exact->times.size() != r.times.size()) throw InvalidParams("adiabatic_report: exact trace grid differs");
        r.exact_inputs = true;
        r.r_fit = joule_fit(exact->q_dot, exact->i_c);
        r.r_tilde = r_tilde_series(exact->q_tilde_dot, r.ic1);
    } else {
        std::vector<double> qsum(terms.size()), qt(terms.size()), isum(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i) {
            qsum[i] = r.q1[i] + r.q2[i];
            qt[i] = qsum[i] - 0.5 * (r.wt1[i] + r.wt2[i]);
            isum[i] = r.ic1[i];
        }
        r.r_fit = joule_fit(qsum, isum);
        r.r_tilde = r_tilde_series(qt, r.ic1);
    }
    return r;
}

} // namespace acflux
