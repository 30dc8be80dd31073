// floquet_green.cpp — Bessel-series Green function, tau-quadrature oracle and
// Floquet harmonics of the driven level.

#include "acflux/floquet_green.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "acflux/bessel.hpp"
#include "acflux/errors.hpp"

namespace acflux {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

long double wrap_phase(long double x) {
    x = std::fmod(x, kTwoPiL);
    return x < 0 ? x + kTwoPiL : x;
}

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double signed_bessel(const std::vector<double>& table, int m) {
    const int a = m < 0 ? -m : m;
    if (a >= static_cast<int>(table.size())) return 0.0;
    const double v = table[static_cast<std::size_t>(a)];
    return (m < 0 && (a & 1)) ? -v : v;
}

} // namespace

int TruncationPolicy::n_max(double alpha) const {
    if (n_max_override > 0) return n_max_override;
    return static_cast<int>(std::ceil(alpha + 8.0 * std::cbrt(alpha) + 20.0));
}

void TruncationPolicy::validate() const {
    if (!(tol > 0.0 && tol <= 1e-6)) throw InvalidParams("truncation tol must lie in (0, 1e-6], got " + fmt_double(tol));
    if (n_max_override < 0) throw InvalidParams("truncation n_max override must be >= 0 (0 selects the default rule)");
}

// ---------------------------------------------------------------- snapshot

complex PoleSnapshot::green(double eps) const {
    complex g, gt;
    evaluate(eps, g, gt);
    return g;
}

complex PoleSnapshot::green_dt(double eps) const {
    complex g, gt;
    evaluate(eps, g, gt);
    return gt;
}

namespace {

struct PoleSums {
    double gr = 0, gi = 0, hr = 0, hi = 0;
};

// Error-free a + b = s + e.
inline void two_sum(double& s, double& e, double x) {
    const double t = s + x;
    const double bp = t - s;
    e += (s - (t - bp)) + (x - bp);
    s = t;
}

// sum_i c_i w_i and sum_i cd_i w_i with w_i = 1/(eps - z_i), or with
// w_i = z_i/(eps - z_i) when Far. Four lanes, fixed reduction order. The
// dG/dt sums cancel to a few parts in 1e5 and carry compensation terms.
template <bool Far>
PoleSums pole_sums(double eps, double y, const double* x, const double* cr, const double* ci, const double* dr,
                   const double* di, std::size_t n) {
    const double y2 = y * y;
    double gr[4] = {}, gi[4] = {}, hr[4] = {}, hi[4] = {}, er[4] = {}, ei[4] = {};
    auto term = [&](std::size_t i, std::size_t k) {
        const double xi = x[i];
        const double dx = eps - xi;
        const double inv = 1.0 / (dx * dx + y2);
        double rr = dx * inv;
        double ri = -y * inv;
        if constexpr (Far) {
            const double zr = xi * rr + y * ri;
            const double zi = xi * ri - y * rr;
            rr = zr;
            ri = zi;
        }
        gr[k] += cr[i] * rr - ci[i] * ri;
        gi[k] += cr[i] * ri + ci[i] * rr;
        two_sum(hr[k], er[k], dr[i] * rr - di[i] * ri);
        two_sum(hi[k], ei[k], dr[i] * ri + di[i] * rr);
    };
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) term(i + k, k);
    }
    for (; i < n; ++i) term(i, 0);
    double sr = 0.0, si = 0.0, cr_ = 0.0, ci_ = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        two_sum(sr, cr_, hr[k]);
        two_sum(si, ci_, hi[k]);
        cr_ += er[k];
        ci_ += ei[k];
    }
    return {(gr[0] + gr[1]) + (gr[2] + gr[3]), (gi[0] + gi[1]) + (gi[2] + gi[3]), sr + cr_, si + ci_};
}

} // namespace

void PoleSnapshot::evaluate(double eps, complex& g, complex& g_dt) const {
    // Far from the poles 1/(eps - z) = 1/eps + z/(eps (eps - z)) pulls out the
    // weight sums; otherwise the O(1/eps) cancellation in dG/dt leaves noise
    // that the mapped band tail amplifies. sum c d is 0 exactly: its rounded
    // value would add a log-divergent 1/eps tail to the dG/dt integrals.
    const bool far = std::abs(eps) > far_field_;
    const std::size_t n = pole_.size();
    const PoleSums s = far ? pole_sums<true>(eps, half_gamma_, pole_.data(), c_re_.data(), c_im_.data(), cd_re_.data(),
                                             cd_im_.data(), n)
                           : pole_sums<false>(eps, half_gamma_, pole_.data(), c_re_.data(), c_im_.data(),
                                              cd_re_.data(), cd_im_.data(), n);
    const complex sg{s.gr, s.gi};
    const complex sh{s.hr, s.hi};
    const complex I{0.0, 1.0};
    if (far) {
        g = (sum_c_ + sg) / eps;
        g_dt = I * sh / eps;
    } else {
        g = sg;
        g_dt = I * sh;
    }
}

// ---------------------------------------------------------------- series

DrivenLevelSeries::DrivenLevelSeries(const ModelParams& p, const TruncationPolicy& pol, bool check_tail)
    : params_(p) {
    p.validate();
    pol.validate();
    n_max_ = pol.n_max(p.alpha());
    bessel_ = bessel_j_table(2 * n_max_, p.alpha());
    if (check_tail && tail_magnitude() > pol.tol) {
        throw TruncationUnconverged("Bessel series not converged: |J_n_max(alpha)| = " +
                                    fmt_double(tail_magnitude()) + " > tol " + fmt_double(pol.tol) +
                                    " at n_max=" + std::to_string(n_max_) + ", alpha=" + fmt_double(p.alpha()));
    }
}

double DrivenLevelSeries::bessel(int m) const { return signed_bessel(bessel_, m); }

double DrivenLevelSeries::tail_magnitude() const { return std::abs(bessel_[static_cast<std::size_t>(n_max_)]); }

PoleSnapshot DrivenLevelSeries::snapshot(double t) const {
    const ModelParams& p = params_;
    PoleSnapshot s;
    s.time_ = t;
    s.half_gamma_ = 0.5 * p.gamma;
    const long double theta = wrap_phase(static_cast<long double>(p.omega) * static_cast<long double>(t));
    const long double base = -static_cast<long double>(p.alpha()) * std::sin(theta);
    const double drive = p.v_ac * static_cast<double>(std::cos(theta));
    const std::size_t n = static_cast<std::size_t>(2 * n_max_ + 1);
    s.pole_.resize(n);
    s.c_re_.resize(n);
    s.c_im_.resize(n);
    s.cd_re_.resize(n);
    s.cd_im_.resize(n);
    double reach = 0.0;
    std::complex<long double> sc = 0.0L;
    for (int m = -n_max_; m <= n_max_; ++m) {
        const std::size_t i = static_cast<std::size_t>(m + n_max_);
        const double j = bessel(m);
        const double phase = static_cast<double>(wrap_phase(base + static_cast<long double>(m) * theta));
        const double cr = j * std::cos(phase);
        const double ci = j * std::sin(phase);
        const double d = m * p.omega - drive;
        s.pole_[i] = p.epsilon0 + m * p.omega;
        reach = std::max(reach, std::abs(s.pole_[i]));
        s.c_re_[i] = cr;
        s.c_im_[i] = ci;
        s.cd_re_[i] = cr * d;
        s.cd_im_[i] = ci * d;
        sc += std::complex<long double>(cr, ci);
    }
    s.sum_c_ = complex(static_cast<double>(sc.real()), static_cast<double>(sc.imag()));
    s.far_field_ = 2.0 * reach + 10.0 * p.gamma;
    return s;
}

complex green_time_energy(double t, double eps, const ModelParams& p, const TruncationPolicy& pol) {
    return DrivenLevelSeries(p, pol).snapshot(t).green(eps);
}

complex green_time_derivative(double t, double eps, const ModelParams& p, const TruncationPolicy& pol) {
    return DrivenLevelSeries(p, pol).snapshot(t).green_dt(eps);
}

// ---------------------------------------------------------------- oracle

complex green_oracle(double t, double eps, const ModelParams& p, double quad_tol) {
    p.validate();
    if (!(quad_tol > 0.0 && quad_tol <= 1e-8)) {
        throw InvalidParams("green_oracle: quad_tol must lie in (0, 1e-8], got " + fmt_double(quad_tol));
    }
    const double tau_max = 2.0 * std::log(1.0 / quad_tol) / p.gamma;
    // Phase psi(tau) = eps tau - int_{t-tau}^t eps_d, with the drive part
    // written as 2 (V/Omega) cos(Omega (t - tau/2)) sin(Omega tau / 2).
    const long double a = static_cast<long double>(p.alpha());
    const long double w = p.omega;
    const long double tl = t;
    auto integrand = [&](double tau) {
        const long double tt = tau;
        const long double drive = 2.0L * a * std::cos(w * (tl - 0.5L * tt)) * std::sin(0.5L * w * tt);
        const long double psi = static_cast<long double>(eps - p.epsilon0) * tt - drive;
        const double ph = static_cast<double>(wrap_phase(psi));
        const double damp = std::exp(-0.5 * p.gamma * tau);
        // -i exp(i psi)
        return std::array<double, 2>{damp * std::sin(ph), -damp * std::cos(ph)};
    };
    // Roughly half an oscillation per initial segment.
    const double rate = std::abs(eps - p.epsilon0) + p.v_ac + p.gamma;
    const int n_seg = std::clamp(static_cast<int>(std::ceil(tau_max * rate / kPi)), 8, 200000);
    std::vector<Segment> segs;
    segs.reserve(static_cast<std::size_t>(n_seg));
    for (int i = 0; i < n_seg; ++i) {
        segs.push_back(Segment::finite(tau_max * i / n_seg, tau_max * (i + 1) / n_seg));
    }
    AdaptiveOptions opt;
    opt.abs_tol = 0.25 * quad_tol;
    opt.rel_tol = 0.0;
    opt.max_intervals = std::max(400000, 8 * n_seg);
    const auto r = integrate_adaptive<2>(integrand, std::span<const Segment>(segs), opt);
    return {r.value[0], r.value[1]};
}

// ---------------------------------------------------------------- integrals

SpectralIntegrals spectral_integrals(const PoleSnapshot& snap, const ModelParams& p, const EnergyGrid& grid,
                                     const AdaptiveOptions& opt) {
    const double top = p.temperature > 0.0 ? p.mu + 40.0 * p.temperature : p.mu;
    const double g2pi = p.gamma / (2.0 * kPi);
    const double gpi = p.gamma / kPi;
    auto integrand = [&](double eps) {
        complex g, gt;
        snap.evaluate(eps, g, gt);
        const double f = p.temperature > 0.0 ? fermi(eps, p) : 1.0;
        return std::array<double, 3>{f * g2pi * std::norm(g), f * g2pi * 2.0 * (std::conj(g) * gt).real(),
                                     f * gpi * gt.real()};
    };
    std::vector<Segment> segs = grid.segments_below(top);
    SpectralIntegrals out;
    // Segment 0 is the mapped (-inf, -D] tail.
    const auto tail = integrate_adaptive<3>(integrand, std::span<const Segment>(segs.data(), 1), opt);
    const auto body = integrate_adaptive<3>(integrand, std::span<const Segment>(segs.data() + 1, segs.size() - 1), opt);
    out.occupation_tail = tail.value[0];
    out.occupation_rate_tail = tail.value[1];
    out.contact_flux_tail = tail.value[2];
    out.occupation = body.value[0] + tail.value[0];
    out.occupation_rate = body.value[1] + tail.value[1];
    out.contact_flux = body.value[2] + tail.value[2];
    out.evaluations = tail.evaluations + body.evaluations;
    return out;
}

double occupation_nd(double t, const ModelParams& p, const TruncationPolicy& pol, const EnergyGrid& grid,
                     const AdaptiveOptions& opt) {
    const DrivenLevelSeries series(p, pol);
    return spectral_integrals(series.snapshot(t), p, grid, opt).occupation;
}

// ---------------------------------------------------------------- harmonics

complex FloquetHarmonics::coeff(int n, std::size_t node) const {
    if (n < -n_max_ || n > n_max_) return {0.0, 0.0};
    return table_[node * width() + static_cast<std::size_t>(n + n_max_)];
}

std::span<const complex> FloquetHarmonics::row(std::size_t node) const {
    return {table_.data() + node * width(), width()};
}

double FloquetHarmonics::bessel(int m) const { return signed_bessel(bessel_, m); }

void FloquetHarmonics::evaluate(double eps, std::span<complex> out) const {
    if (out.size() != width()) throw InvalidParams("FloquetHarmonics::evaluate: output size mismatch");
    const ModelParams& p = params_;
    const int nm = n_max_;
    std::vector<complex> r(width());
    for (int m = -nm; m <= nm; ++m) {
        r[static_cast<std::size_t>(m + nm)] = 1.0 / complex(eps - p.epsilon0 - m * p.omega, 0.5 * p.gamma);
    }
    for (int n = -nm; n <= nm; ++n) {
        complex acc{0.0, 0.0};
        for (int m = -nm; m <= nm; ++m) {
            const double jj = bessel(n + m) * bessel(m);
            if (jj != 0.0) acc += jj * r[static_cast<std::size_t>(m + nm)];
        }
        out[static_cast<std::size_t>(n + nm)] = acc;
    }
}

complex FloquetHarmonics::evaluate(int n, double eps) const {
    const ModelParams& p = params_;
    complex acc{0.0, 0.0};
    for (int m = -n_max_; m <= n_max_; ++m) {
        const double jj = bessel(n + m) * bessel(m);
        if (jj != 0.0) acc += jj / complex(eps - p.epsilon0 - m * p.omega, 0.5 * p.gamma);
    }
    return acc;
}

complex FloquetHarmonics::reconstruct(double t, std::size_t node) const {
    const auto r = row(node);
    const long double theta = wrap_phase(static_cast<long double>(params_.omega) * t);
    complex acc{0.0, 0.0};
    for (int n = -n_max_; n <= n_max_; ++n) {
        const double ph = -static_cast<double>(wrap_phase(static_cast<long double>(n) * theta));
        acc += complex(std::cos(ph), std::sin(ph)) * r[static_cast<std::size_t>(n + n_max_)];
    }
    return acc;
}

FloquetHarmonics harmonics_unchecked(const ModelParams& p, const TruncationPolicy& pol, const EnergyGrid& grid) {
    p.validate();
    FloquetHarmonics h;
    h.params_ = p;
    h.n_max_ = pol.n_max(p.alpha());
    h.grid_ = grid;
    h.bessel_ = bessel_j_table(2 * h.n_max_, p.alpha());
    const std::size_t w = h.width();
    const auto nodes = grid.nodes();
    h.table_.resize(nodes.size() * w);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        h.evaluate(nodes[i], std::span<complex>(h.table_.data() + i * w, w));
    }
    return h;
}

FloquetHarmonics harmonics(const ModelParams& p, const TruncationPolicy& pol, const EnergyGrid& grid) {
    p.validate();
    pol.validate();
    if (p.alpha() > kHarmonicAlphaLimit) {
        throw AlphaTooLarge("harmonic path requested at alpha = " + fmt_double(p.alpha()) + " > " +
                            fmt_double(kHarmonicAlphaLimit) + "; use the time-domain path");
    }
    const int nm = pol.n_max(p.alpha());
    const std::vector<double> j = bessel_j_table(2 * nm, p.alpha());
    const double tail = std::abs(j[static_cast<std::size_t>(nm)]);
    if (tail > pol.tol) {
        throw TruncationUnconverged("harmonic table not converged: |J_n_max(alpha)| = " + fmt_double(tail) +
                                    " > tol " + fmt_double(pol.tol) + " at n_max=" + std::to_string(nm));
    }
    double sum = j[0] * j[0];
    for (int m = 1; m <= nm; ++m) sum += 2.0 * j[static_cast<std::size_t>(m)] * j[static_cast<std::size_t>(m)];
    if (std::abs(1.0 - sum) > pol.tol) {
        throw TruncationUnconverged("Bessel sum rule violated: |1 - sum J_m^2| = " + fmt_double(std::abs(1.0 - sum)) +
                                    " at n_max=" + std::to_string(nm));
    }
    return harmonics_unchecked(p, pol, grid);
}

EnergyGrid sideband_grid(const ModelParams& p, int n_max, const GridSpec& spec) {
    const double half = (n_max + 1) * p.omega + 40.0 * p.temperature;
    GridSpec s = spec;
    s.fine_panel = std::min(spec.fine_panel, p.omega);
    for (int k = -(n_max + 1); k <= n_max + 1; ++k) s.breakpoints.push_back(p.mu + k * p.omega);
    std::vector<Window> windows{{p.mu, 2.0 * half}, {p.epsilon0, 2.0 * p.v_ac + 10.0 * p.gamma}};
    return EnergyGrid::build(p.cutoff(), std::move(windows), s);
}

} // namespace acflux
