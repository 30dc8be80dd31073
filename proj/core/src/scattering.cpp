// scattering.cpp — Floquet S matrix, unitarity defect and W_E.

#include "acflux/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "acflux/errors.hpp"

namespace acflux {

complex FloquetSMatrix::amp(int m, std::size_t node) const {
    const complex d = m == 0 ? complex{1.0, 0.0} : complex{};
    return d - complex{0.0, params().gamma} * harmonics_.coeff(m, node);
}

complex FloquetSMatrix::amp_at(int m, int n, double eps) const {
    const complex d = m == n ? complex{1.0, 0.0} : complex{};
    const int k = m - n;
    if (k < -n_max() || k > n_max()) return d;
    return d - complex{0.0, params().gamma} * harmonics_.evaluate(k, eps + n * params().omega);
}

complex FloquetSMatrix::block(std::size_t sample, int m, int n) const {
    const std::size_t w = harmonics_.width();
    return blocks_[(sample * w + static_cast<std::size_t>(m + n_max())) * w + static_cast<std::size_t>(n + n_max())];
}

FloquetSMatrix build_smatrix(const FloquetHarmonics& h, double tail_tol) {
    const ModelParams& p = h.params();
    const int nm = h.n_max();
    const auto nodes = h.grid().nodes();
    double tail = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        tail = std::max({tail, std::abs(h.coeff(nm, i)), std::abs(h.coeff(-nm, i))});
    }
    tail *= p.gamma;
    if (tail > tail_tol) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "Floquet S matrix truncation: Gamma*max|G(+-n_max, eps)| = %.3e exceeds %.1e at n_max=%d",
                      tail, tail_tol, nm);
        throw TruncationUnconverged(buf);
    }

    FloquetSMatrix s;
    s.harmonics_ = h;
    // In-window energies: the sideband window around mu.
    const double half = (nm + 1) * p.omega + 40.0 * p.temperature;
    std::vector<double> window;
    for (double e : nodes) {
        if (std::abs(e - p.mu) <= half) window.push_back(e);
    }
    const std::size_t stride = std::max<std::size_t>(1, (window.size() + kMaxUnitaritySamples - 1) / kMaxUnitaritySamples);
    for (std::size_t i = 0; i < window.size(); i += stride) s.samples_.push_back(window[i]);

    const std::size_t w = h.width();
    s.blocks_.assign(s.samples_.size() * w * w, complex{});
    std::vector<complex> row(w);
    const complex ig{0.0, p.gamma};
    for (std::size_t si = 0; si < s.samples_.size(); ++si) {
        for (int n = -nm; n <= nm; ++n) {
            h.evaluate(s.samples_[si] + n * p.omega, row);
            for (int m = -nm; m <= nm; ++m) {
                const int k = m - n;
                complex v = m == n ? complex{1.0, 0.0} : complex{};
                if (k >= -nm && k <= nm) v -= ig * row[static_cast<std::size_t>(k + nm)];
                s.blocks_[(si * w + static_cast<std::size_t>(m + nm)) * w + static_cast<std::size_t>(n + nm)] = v;
            }
        }
    }
    return s;
}

double unitarity_defect(const FloquetSMatrix& s) {
    const int nm = s.n_max();
    double worst = 0.0;
    for (std::size_t si = 0; si < s.sample_energies().size(); ++si) {
        for (int m = -nm; m <= nm; ++m) {
            complex acc{};
            for (int n = -nm; n <= nm; ++n) acc += std::conj(s.block(si, n, 0)) * s.block(si, n, m);
            if (m == 0) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

HarmonicSeries energy_flux_scattering_series(const FloquetSMatrix& s) {
    const ModelParams& p = s.params();
    const int nm = s.n_max();
    const FloquetHarmonics& h = s.harmonics();
    const auto nodes = h.grid().nodes();
    const auto weights = h.grid().weights();
    const double inv_2h = 1.0 / (2.0 * kPlanck);
    HarmonicSeries out;
    out.omega = p.omega;
    out.l_max = nm;
    out.coeff.assign(h.width(), complex{});
    std::vector<complex> amps(h.width());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double eps = nodes[i];
        const double fe = fermi(eps, p);
        bool any = false;
        for (int q = -nm; q <= nm && !any; ++q) any = fe != fermi(eps + q * p.omega, p);
        if (!any) continue;
        for (int k = -nm; k <= nm; ++k) amps[static_cast<std::size_t>(k + nm)] = s.amp(k, i);
        for (int q = -nm; q <= nm; ++q) {
            const double win = fe - fermi(eps + q * p.omega, p);
            if (win == 0.0) continue;
            const complex sq = std::conj(amps[static_cast<std::size_t>(q + nm)]) * (weights[i] * win * inv_2h);
            const int lo = std::max(-nm, -nm - q);
            const int hi = std::min(nm, nm - q);
            for (int n = lo; n <= hi; ++n) {
                const double energy = 2.0 * eps + (2 * q + n) * p.omega;
                out.coeff[static_cast<std::size_t>(n + nm)] += energy * sq * amps[static_cast<std::size_t>(n + q + nm)];
            }
        }
    }
    return out;
}

double energy_flux_scattering(double t, const FloquetSMatrix& s) {
    return energy_flux_scattering_series(s)(t);
}

} // namespace acflux
