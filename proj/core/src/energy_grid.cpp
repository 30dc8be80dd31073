// energy_grid.cpp — composite Gauss-Legendre energy rule.

#include "acflux/energy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acflux/errors.hpp"

namespace acflux {

namespace {

// Distance from x to the nearest window (0 inside one).
double window_distance(double x, const std::vector<Window>& windows) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : windows) {
        const double lo = w.center - 0.5 * w.width;
        const double hi = w.center + 0.5 * w.width;
        double d = 0.0;
        if (x < lo) d = lo - x;
        else if (x > hi) d = x - hi;
        best = std::min(best, d);
    }
    return best;
}

} // namespace

EnergyGrid EnergyGrid::build(double cutoff, std::vector<Window> windows, const GridSpec& spec) {
    if (!(cutoff > 0.0)) throw InvalidParams("EnergyGrid: cutoff must be positive");
    if (!(spec.fine_panel > 0.0) || !(spec.growth >= 1.0) || spec.order < 1) {
        throw InvalidParams("EnergyGrid: invalid grid spec");
    }
    EnergyGrid g;
    g.cutoff_ = cutoff;
    g.windows_ = std::move(windows);

    // Panel width grows geometrically with distance from the nearest window.
    std::vector<double> edges{-cutoff};
    double x = -cutoff;
    while (x < cutoff) {
        const double d = g.windows_.empty() ? cutoff : window_distance(x, g.windows_);
        double h = spec.fine_panel * (1.0 + (spec.growth - 1.0) * d / spec.fine_panel);
        h = std::min(h, std::max(spec.fine_panel, 0.5 * d + spec.fine_panel));
        // Do not step over the start of a window.
        for (const auto& w : g.windows_) {
            const double lo = w.center - 0.5 * w.width;
            if (lo > x + 1e-12 && lo < x + h) h = lo - x;
        }
        x = std::min(cutoff, x + h);
        edges.push_back(x);
    }
    for (double b : spec.breakpoints) {
        if (b > -cutoff && b < cutoff) edges.push_back(b);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<double> unique;
    for (double e : edges) {
        if (unique.empty() || e - unique.back() > 1e-12 * std::max(1.0, std::abs(e))) unique.push_back(e);
        else unique.back() = e;
    }
    unique.front() = -cutoff;
    unique.back() = cutoff;
    g.edges_ = std::move(unique);

    const GaussRule rule = gauss_legendre(spec.order);
    g.nodes_.reserve(g.edges_.size() * rule.nodes.size());
    g.weights_.reserve(g.nodes_.capacity());
    for (std::size_t i = 0; i + 1 < g.edges_.size(); ++i) {
        const double a = g.edges_[i];
        const double b = g.edges_[i + 1];
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            g.nodes_.push_back(c + h * rule.nodes[j]);
            g.weights_.push_back(h * rule.weights[j]);
        }
    }

    // (-inf, -cutoff] through x = -cutoff / s, s in (0, 1].
    const int tp = std::max(1, spec.tail_panels);
    for (int i = tp - 1; i >= 0; --i) {
        const double s0 = static_cast<double>(i) / tp;
        const double s1 = static_cast<double>(i + 1) / tp;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * rule.nodes[j];
            g.tail_nodes_.push_back(-cutoff / s);
            g.tail_weights_.push_back(0.5 * (s1 - s0) * rule.weights[j] * cutoff / (s * s));
        }
    }
    return g;
}

EnergyGrid EnergyGrid::for_time(double t, const ModelParams& p, int n_max, double resonance_width,
                                const GridSpec& spec) {
    const double mu_width = std::max({p.temperature * 80.0, p.omega * n_max, 1.0});
    std::vector<Window> windows{{p.mu, mu_width}, {level_energy(t, p), resonance_width}};
    GridSpec s = spec;
    s.breakpoints.push_back(p.mu);
    return build(p.cutoff(), std::move(windows), s);
}

double EnergyGrid::integrate(std::span<const double> values) const {
    if (values.size() != weights_.size()) throw InvalidParams("EnergyGrid::integrate: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights_[i] * values[i];
    return s;
}

std::vector<Segment> EnergyGrid::segments_below(double upper) const {
    std::vector<Segment> segs;
    segs.push_back(Segment::tail_below(-cutoff_));
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        const double a = edges_[i];
        if (a >= upper) break;
        segs.push_back(Segment::finite(a, std::min(edges_[i + 1], upper)));
    }
    if (upper > cutoff_) segs.push_back(Segment::finite(cutoff_, upper));
    return segs;
}

} // namespace acflux
