// quadrature.hpp — Gauss-Legendre rules and an adaptive vector Gauss-Kronrod
// integrator with support for a mapped semi-infinite lower segment.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "acflux/errors.hpp"

namespace acflux {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], increasing
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule (Newton iteration on P_n), n >= 1.
GaussRule gauss_legendre(int n);

// One integration segment. A lower-tail segment covers (-inf, b] through the
// substitution x = b - scale * (1 - s) / s, s in (0, 1].
struct Segment {
    double a = 0.0;
    double b = 0.0;
    bool lower_tail = false;

    static Segment finite(double lo, double hi) { return {lo, hi, false}; }
    static Segment tail_below(double hi) { return {hi, hi, true}; }
};

struct AdaptiveOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_intervals = 20000;
};

template <std::size_t N>
struct AdaptiveResult {
    std::array<double, N> value{};
    std::array<double, N> error{};
    int evaluations = 0;
    int intervals = 0;
};

namespace detail {

// QUADPACK qk21 abscissae/weights (positive half, last entry is the centre).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980435155, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t N>
struct Piece {
    int segment = 0;
    double lo = 0.0;  // in the segment's own variable
    double hi = 0.0;
    std::array<double, N> value{};
    std::array<double, N> error{};
};

// Map the segment variable to x and return dx/du.
inline double map_point(const Segment& seg, double u, double& x) {
    if (!seg.lower_tail) {
        x = u;
        return 1.0;
    }
    const double scale = std::max(std::abs(seg.b), 1.0);
    if (!(u > 0.0)) {
        x = -std::numeric_limits<double>::infinity();
        return 0.0;
    }
    x = seg.b - scale * (1.0 - u) / u;
    return scale / (u * u);
}

template <std::size_t N, class F>
Piece<N> kronrod21(F& f, const Segment& seg, int index, double lo, double hi) {
    Piece<N> out;
    out.segment = index;
    out.lo = lo;
    out.hi = hi;
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, N> res_k{}, res_g{}, res_abs{};
    std::array<std::array<double, N>, 21> fv{};
    auto eval = [&](double u) {
        double x = 0.0;
        const double jac = map_point(seg, u, x);
        if (jac == 0.0) return std::array<double, N>{};
        std::array<double, N> v = f(x);
        for (auto& c : v) c *= jac;
        return v;
    };
    fv[20] = eval(centre);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        fv[2 * j] = eval(centre - dx);
        fv[2 * j + 1] = eval(centre + dx);
    }
    for (std::size_t k = 0; k < N; ++k) {
        double rk = kWgk[10] * fv[20][k];
        double ra = std::abs(rk);
        double rg = 0.0;
        for (int j = 0; j < 10; ++j) {
            const double s = fv[2 * j][k] + fv[2 * j + 1][k];
            rk += kWgk[j] * s;
            ra += kWgk[j] * (std::abs(fv[2 * j][k]) + std::abs(fv[2 * j + 1][k]));
            if (j % 2 == 1) rg += kWg[j / 2] * s;
        }
        const double mean = 0.5 * rk;
        double asc = kWgk[10] * std::abs(fv[20][k] - mean);
        for (int j = 0; j < 10; ++j) {
            asc += kWgk[j] * (std::abs(fv[2 * j][k] - mean) + std::abs(fv[2 * j + 1][k] - mean));
        }
        res_k[k] = rk * half;
        res_g[k] = rg * half;
        res_abs[k] = ra * std::abs(half);
        asc *= std::abs(half);
        double err = std::abs(res_k[k] - res_g[k]);
        if (asc != 0.0 && err != 0.0) {
            err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
        }
        constexpr double eps = std::numeric_limits<double>::epsilon();
        if (res_abs[k] > std::numeric_limits<double>::min() / (50.0 * eps)) {
            err = std::max(50.0 * eps * res_abs[k], err);
        }
        out.value[k] = res_k[k];
        out.error[k] = err;
    }
    return out;
}

} // namespace detail

// Integrate a vector-valued integrand over the union of segments, bisecting
// the piece with the largest tolerance-weighted error until every component
// meets max(abs_tol, rel_tol * |I_k|). Deterministic for a given input.
template <std::size_t N, class F>
AdaptiveResult<N> integrate_adaptive(F&& f, std::span<const Segment> segments,
                                     const AdaptiveOptions& opt = {}) {
    using Piece = detail::Piece<N>;
    std::vector<Piece> pieces;
    pieces.reserve(segments.size() * 4);
    int evals = 0;
    auto piece = [&](const Segment& s, int idx, double lo, double hi) {
        Piece pc = detail::kronrod21<N>(f, s, idx, lo, hi);
        for (std::size_t k = 0; k < N; ++k) {
            if (!std::isfinite(pc.value[k]) || !std::isfinite(pc.error[k])) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "adaptive quadrature: integrand is not finite on [" << lo << ", " << hi << "]"
                    << (s.lower_tail ? " of the mapped tail" : "");
                throw QuadratureFailure(msg.str());
            }
        }
        return pc;
    };
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        if (s.lower_tail) {
            pieces.push_back(piece(s, static_cast<int>(i), 0.0, 1.0));
        } else if (s.b > s.a) {
            pieces.push_back(piece(s, static_cast<int>(i), s.a, s.b));
        } else {
            continue;
        }
        evals += 21;
    }

    auto totals = [&](std::array<double, N>& val, std::array<double, N>& err) {
        val.fill(0.0);
        err.fill(0.0);
        for (const auto& pc : pieces) {
            for (std::size_t k = 0; k < N; ++k) {
                val[k] += pc.value[k];
                err[k] += pc.error[k];
            }
        }
    };

    std::array<double, N> val{}, err{};
    totals(val, err);
    auto tolerance = [&] {
        std::array<double, N> tol{};
        for (std::size_t k = 0; k < N; ++k) tol[k] = std::max(opt.abs_tol, opt.rel_tol * std::abs(val[k]));
        return tol;
    };
    auto score = [](const Piece& pc, const std::array<double, N>& tol) {
        double s = 0.0;
        for (std::size_t k = 0; k < N; ++k) s = std::max(s, pc.error[k] / tol[k]);
        return s;
    };
    // Max-heap keyed on the score at insertion; ties broken by index for determinism.
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> heap;
    {
        const auto tol = tolerance();
        for (std::size_t i = 0; i < pieces.size(); ++i) heap.emplace(score(pieces[i], tol), i);
    }
    while (true) {
        const auto tol = tolerance();
        bool done = true;
        for (std::size_t k = 0; k < N; ++k) {
            if (err[k] > tol[k]) done = false;
        }
        if (done || heap.empty()) break;
        if (static_cast<int>(pieces.size()) >= opt.max_intervals) {
            throw QuadratureFailure("adaptive quadrature hit " + std::to_string(opt.max_intervals) +
                                    " intervals without reaching tolerance (abs_tol=" +
                                    std::to_string(opt.abs_tol) + ")");
        }
        const std::size_t worst = heap.top().second;
        heap.pop();
        const Piece old = pieces[worst];
        const Segment& seg = segments[static_cast<std::size_t>(old.segment)];
        const double mid = 0.5 * (old.lo + old.hi);
        if (!(mid > old.lo && mid < old.hi)) {
            throw QuadratureFailure("adaptive quadrature interval underflow");
        }
        Piece left = piece(seg, old.segment, old.lo, mid);
        Piece right = piece(seg, old.segment, mid, old.hi);
        evals += 42;
        pieces[worst] = left;
        pieces.push_back(right);
        for (std::size_t k = 0; k < N; ++k) {
            val[k] += left.value[k] + right.value[k] - old.value[k];
            err[k] += left.error[k] + right.error[k] - old.error[k];
        }
        heap.emplace(score(left, tol), worst);
        heap.emplace(score(right, tol), pieces.size() - 1);
    }
    // Running updates drift; recompute before reporting.
    totals(val, err);

    // Final sum in position order so the bits do not depend on refinement history.
    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
        return x.segment != y.segment ? x.segment < y.segment : x.lo < y.lo;
    });
    AdaptiveResult<N> out;
    for (const auto& pc : pieces) {
        for (std::size_t k = 0; k < N; ++k) {
            out.value[k] += pc.value[k];
            out.error[k] += pc.error[k];
        }
    }
    out.evaluations = evals;
    out.intervals = static_cast<int>(pieces.size());
    return out;
}

} // namespace acflux
