// harmonic_fluxes.cpp — I_C, W_C and W_T as sideband sums over G(n, eps).
//
// After shifting eps -> eps + n hbar Omega every term needs G(k, eps) at the
// same energy, so one pass over the grid accumulates all Fourier
// coefficients. Terms carrying f(eps - l Omega) or (l Omega / 2) f are not
// Fermi-windowed; they run over the full half-line including the mapped tail.

#include "acflux/harmonic_fluxes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "acflux/errors.hpp"

namespace acflux {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

complex phase(int l, double omega, double t) {
    long double x = std::fmod(static_cast<long double>(l) * static_cast<long double>(omega) * t, kTwoPiL);
    const double a = -static_cast<double>(x);
    return {std::cos(a), std::sin(a)};
}

struct Accumulator {
    int n_max;
    std::vector<complex> t1, t2, a, b, k;  // index l + n_max

    explicit Accumulator(int nm)
        : n_max(nm), t1(w()), t2(w()), a(w()), b(w()), k(w()) {}
    std::size_t w() const { return static_cast<std::size_t>(2 * n_max + 1); }

    // g[k + n_max] = G(k, eps); weight is the quadrature weight.
    void add(double eps, double weight, const complex* g, const ModelParams& p) {
        const int nm = n_max;
        const double om = p.omega;
        const double gg = p.gamma * p.gamma;
        const double fe = fermi(eps, p);
        auto G = [&](int kk) { return (kk < -nm || kk > nm) ? complex{} : g[kk + nm]; };
        const complex I{0.0, 1.0};
        for (int l = -nm; l <= nm; ++l) {
            const std::size_t li = static_cast<std::size_t>(l + nm);
            const complex gc = I * std::conj(G(-l));
            const double fl = fermi(eps - l * om, p);
            t1[li] += weight * (fl - fe) * gc;
            a[li] += weight * ((eps - l * om) * fl - eps * fe) * gc;
            k[li] += weight * fe * G(l);
        }
        // Windowed sideband products and the half-line (l Omega / 2) f piece.
        for (int n = -nm; n <= nm; ++n) {
            const double fn = fermi(eps + n * om, p);
            const double win = fe - fn;
            const complex gn = std::conj(G(n)) * (weight * gg);
            const int lo = std::max(-nm, -nm - n);
            const int hi = std::min(nm, nm - n);
            const double en = eps + n * om;
            for (int l = lo; l <= hi; ++l) {
                const complex prod = G(l + n) * gn;
                const std::size_t li = static_cast<std::size_t>(l + nm);
                if (win != 0.0) {
                    t2[li] += win * prod;
                    b[li] += (en * win) * prod;
                }
                if (fe != 0.0) b[li] += (0.5 * l * om * fe) * prod;
            }
        }
    }
};

} // namespace

double HarmonicSeries::operator()(double t) const {
    double s = 0.0;
    for (int l = -l_max; l <= l_max; ++l) {
        s += (phase(l, omega, t) * coeff[static_cast<std::size_t>(l + l_max)]).real();
    }
    return s;
}

double HarmonicSeries::imag_part(double t) const {
    double s = 0.0;
    for (int l = -l_max; l <= l_max; ++l) {
        s += (phase(l, omega, t) * coeff[static_cast<std::size_t>(l + l_max)]).imag();
    }
    return s;
}

HarmonicFluxes harmonic_fluxes(const FloquetHarmonics& h) {
    const ModelParams& p = h.params();
    const int nm = h.n_max();
    const EnergyGrid& grid = h.grid();
    Accumulator acc(nm);
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    for (std::size_t i = 0; i < nodes.size(); ++i) acc.add(nodes[i], weights[i], h.row(i).data(), p);
    std::vector<complex> g(h.width());
    const auto tn = grid.tail_nodes();
    const auto tw = grid.tail_weights();
    for (std::size_t i = 0; i < tn.size(); ++i) {
        h.evaluate(tn[i], g);
        acc.add(tn[i], tw[i], g.data(), p);
    }

    const double inv_h = 1.0 / kPlanck;
    HarmonicFluxes out;
    for (HarmonicSeries* s : {&out.i_c, &out.w_c, &out.w_t}) {
        s->omega = p.omega;
        s->l_max = nm;
        s->coeff.assign(acc.w(), complex{});
    }
    for (int l = -nm; l <= nm; ++l) {
        const std::size_t li = static_cast<std::size_t>(l + nm);
        out.i_c.coeff[li] = -inv_h * (acc.t1[li] - acc.t2[li]);
        out.w_c.coeff[li] = -inv_h * (acc.a[li] - acc.b[li]);
        out.w_t.coeff[li] = complex{0.0, -2.0 * p.gamma * inv_h * l * p.omega} * acc.k[li];
    }
    return out;
}

DualPathReport compare_paths(const ModelParams& p_in, const EngineConfig& cfg, int n_times) {
    const TimeDomainEngine engine(p_in, cfg);
    const ModelParams& p = engine.params();
    const FloquetHarmonics h = harmonics(p, cfg.truncation, sideband_grid(p, cfg.truncation.n_max(p.alpha())));
    const HarmonicFluxes hf = harmonic_fluxes(h);
    const std::vector<double> times = period_grid(p, n_times);
    std::vector<PointFluxes> pts(times.size());
    parallel_for(pts.size(), cfg.threads, [&](std::size_t i) { pts[i] = engine.at(times[i]); });

    DualPathReport r;
    double max_res = 0.0, max_wd = 0.0;
    auto upd = [](PathComparison& c, double td, double hv) {
        c.max_abs_diff = std::max(c.max_abs_diff, std::abs(td - hv));
        c.max_abs_value = std::max(c.max_abs_value, std::abs(td));
    };
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double ic = hf.i_c(times[i]);
        const double wc = hf.w_c(times[i]);
        const double wt = hf.w_t(times[i]);
        upd(r.i_c, pts[i].i_c, ic);
        upd(r.w_c, pts[i].w_c, wc);
        upd(r.w_t, pts[i].w_t, wt);
        const double wd = -level_energy(times[i], p) * ic;
        max_res = std::max(max_res, std::abs(wc + wt + wd));
        max_wd = std::max(max_wd, std::abs(wd));
    }
    r.harmonic_conservation = max_wd > 0.0 ? max_res / max_wd : max_res;
    return r;
}

void require_paths_agree(const DualPathReport& r, double tol) {
    auto check = [&](const PathComparison& c, const char* name) {
        if (c.relative() > tol) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: time-domain and harmonic paths differ by %.3e (relative), tolerance %.1e",
                          name, c.relative(), tol);
            throw PathMismatch(buf);
        }
    };
    check(r.i_c, "I_C");
    check(r.w_c, "W_C");
    check(r.w_t, "W_T");
}

} // namespace acflux
