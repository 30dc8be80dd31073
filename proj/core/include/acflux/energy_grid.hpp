// energy_grid.hpp — composite Gauss-Legendre energy rule on [-D, D] with
// refinement windows, plus an optional mapped rule for (-inf, -D].

#pragma once

#include <span>
#include <vector>

#include "acflux/model.hpp"
#include "acflux/quadrature.hpp"

namespace acflux {

struct Window {
    double center = 0.0;
    double width = 0.0;  // full width; the window covers center +- width/2
};

struct GridSpec {
    double fine_panel = 0.25;   // panel width inside windows
    double growth = 1.6;        // geometric panel growth away from windows
    int order = 16;             // Gauss-Legendre points per panel
    int tail_panels = 4;        // panels for the mapped (-inf, -D] rule
    std::vector<double> breakpoints;  // extra forced panel edges (e.g. mu + k*Omega)
};

class EnergyGrid {
public:
    EnergyGrid() = default;

    // Rule over [-cutoff, cutoff] refined inside each window.
    static EnergyGrid build(double cutoff, std::vector<Window> windows, const GridSpec& spec = {});

    // Grid for time-domain integrands at time t: windows around mu (width
    // max(T, hbar*Omega*n_max)) and around epsilon_d(t) (width resonance_width).
    static EnergyGrid for_time(double t, const ModelParams& p, int n_max,
                               double resonance_width = 10.0, const GridSpec& spec = {});

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const Window> windows() const { return windows_; }
    std::span<const double> panel_edges() const { return edges_; }
    // Mapped rule for (-inf, -cutoff]: nodes strictly below -cutoff.
    std::span<const double> tail_nodes() const { return tail_nodes_; }
    std::span<const double> tail_weights() const { return tail_weights_; }
    double cutoff() const { return cutoff_; }
    std::size_t size() const { return nodes_.size(); }

    // Sum of weights * values over the main rule.
    double integrate(std::span<const double> values) const;

    // Segments (panel edges plus the lower tail) for the adaptive integrator,
    // restricted to (-inf, upper].
    std::vector<Segment> segments_below(double upper) const;

private:
    double cutoff_ = 0.0;
    std::vector<Window> windows_;
    std::vector<double> edges_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> tail_nodes_;
    std::vector<double> tail_weights_;
};

} // namespace acflux
