// acflux_golden — regenerates the reference files under tests/data.
//
//   acflux_golden green <file>   G(t, eps) from the tau-quadrature route
//   acflux_golden wd <file>      W_D(t) at 16 instants, Fig. 2 scenario

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "acflux/flux_engine.hpp"
#include "acflux/floquet_green.hpp"
#include "acflux/golden.hpp"

namespace {

using acflux::GoldenFile;
using acflux::ModelParams;

void set_params(GoldenFile& g, const ModelParams& p) {
    g.params = {{"epsilon0", p.epsilon0}, {"v_ac", p.v_ac}, {"omega", p.omega},
                {"gamma", p.gamma},       {"mu", p.mu},     {"temperature", p.temperature}};
}

GoldenFile green_file() {
    ModelParams p;
    p.v_ac = 1.0;
    p.omega = 0.5;
    GoldenFile g;
    set_params(g, p);
    g.comments.push_back("G(t, eps) by quadrature over the relative time, tolerance 1e-13");
    const std::vector<std::pair<double, double>> pts = {
        {0.0, 0.0}, {0.0, -1.2}, {0.0, 2.0}, {1.0, -0.7}, {3.0, -1.7}, {5.0, 0.3}, {7.5, -3.0}, {11.0, 1.1}};
    for (auto [t, e] : pts) g.records.push_back({t, e, acflux::green_oracle(t, e, p, 1e-13), 1e-10});
    return g;
}

GoldenFile wd_file() {
    ModelParams p;
    acflux::EngineConfig cfg;
    const acflux::TimeDomainEngine eng(p, cfg);
    GoldenFile g;
    set_params(g, p);
    g.comments.push_back("W_D(t) = -eps_d(t) I_C(t) on t_k = k tau / 16; tol is relative to max |W_D|");
    for (double t : acflux::period_grid(p, 16)) {
        g.records.push_back({t, 0.0, {eng.at(t).w_d, 0.0}, 1e-9});
    }
    return g;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: acflux_golden green|wd <file>\n");
        return 2;
    }
    const std::string what = argv[1];
    GoldenFile g;
    if (what == "green") {
        g = green_file();
    } else if (what == "wd") {
        g = wd_file();
    } else {
        std::fprintf(stderr, "unknown table '%s'\n", what.c_str());
        return 2;
    }
    std::ofstream out(argv[2]);
    if (!out) {
        std::fprintf(stderr, "cannot write '%s'\n", argv[2]);
        return 2;
    }
    acflux::write_golden(out, g);
    return 0;
}
