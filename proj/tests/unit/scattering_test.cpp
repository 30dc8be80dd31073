#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "acflux/errors.hpp"
#include "acflux/flux_engine.hpp"
#include "acflux/scattering.hpp"

using namespace acflux;

namespace {

ModelParams moderate() {
    ModelParams p;
    p.v_ac = 1.0;
    p.omega = 0.5;
    return p;
}

FloquetSMatrix smatrix(const ModelParams& p, TruncationPolicy pol = {}) {
    const int n = pol.n_max(p.alpha());
    return build_smatrix(harmonics_unchecked(p, pol, sideband_grid(p, n)), std::numeric_limits<double>::infinity());
}

complex g0(double eps, const ModelParams& p) { return 1.0 / complex(eps - p.epsilon0, 0.5 * p.gamma); }

} // namespace

TEST_SUITE("scattering") {

TEST_CASE("static scattering is a pure phase") {
    ModelParams p = moderate();
    p.v_ac = 0.0;
    const FloquetSMatrix s = smatrix(p);
    for (std::size_t k = 0; k < s.grid().size(); k += 11) {
        CHECK(std::abs(std::abs(s.amp(0, k)) - 1.0) <= 1e-12);
        for (int m = 1; m <= s.n_max(); ++m) CHECK(s.amp(m, k) == complex(0.0, 0.0));
    }
    CHECK(unitarity_defect(s) <= 1e-12);
    for (double t : {0.0, 3.0}) CHECK(energy_flux_scattering(t, s) == 0.0);
}

TEST_CASE("unitarity in the moderate regime and its convergence") {
    const ModelParams p = moderate();
    const double d_default = unitarity_defect(build_smatrix(harmonics(p, {}, sideband_grid(p, TruncationPolicy{}.n_max(p.alpha()))))) ;
    CHECK(d_default <= 1e-6);

    double prev = std::numeric_limits<double>::infinity();
    for (int n : {2, 4, 8, 16}) {
        TruncationPolicy pol;
        pol.n_max_override = n;
        const double d = unitarity_defect(smatrix(p, pol));
        INFO("n_max=" << n << " defect=" << d);
        CHECK(d <= prev * (1.0 + 1e-9) + 1e-15);
        prev = d;
    }
    CHECK(prev <= 1e-6);
}

TEST_CASE("weak coupling leaves the electrons unscattered") {
    // Off resonance (a quarter sideband from every pole) |S - 1| is O(Gamma).
    std::vector<double> dev;
    for (double g : {1e-2, 1e-3, 1e-4}) {
        ModelParams p = moderate();
        p.gamma = g;
        const FloquetSMatrix s = smatrix(p);
        double worst = 0.0;
        for (double e : {-2.95, 0.05, 2.05}) {
            for (int m = -s.n_max(); m <= s.n_max(); ++m) {
                worst = std::max(worst, std::abs(s.amp_at(m, 0, e) - (m == 0 ? 1.0 : 0.0)));
            }
        }
        INFO("gamma=" << g);
        CHECK(unitarity_defect(s) <= 1e-9);
        dev.push_back(worst);
    }
    CHECK(dev[0] < 0.1);
    CHECK(dev[1] / dev[0] == doctest::Approx(0.1).epsilon(0.05));
    CHECK(dev[2] / dev[1] == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("entries agree with the harmonics table") {
    const ModelParams p = moderate();
    const FloquetSMatrix s = smatrix(p);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> un(0, s.grid().size() - 1);
    std::uniform_int_distribution<int> um(-4, 4);
    for (int i = 0; i < 20; ++i) {
        const std::size_t k = un(rng);
        const int m = um(rng);
        const double e = s.grid().nodes()[k];
        const complex ref = (m == 0 ? 1.0 : 0.0) - complex(0.0, p.gamma) * s.harmonics().coeff(m, k);
        CHECK(std::abs(s.amp(m, k) - ref) <= 1e-15);
        CHECK(std::abs(s.amp_at(m, 0, e) - ref) <= 1e-14);
        const int n = um(rng);
        const complex shifted = (m == n ? 1.0 : 0.0) - complex(0.0, p.gamma) * s.harmonics().evaluate(m - n, e + n * p.omega);
        CHECK(std::abs(s.amp_at(m, n, e) - shifted) <= 1e-14);
    }
    for (std::size_t i = 0; i < s.sample_energies().size(); i += 17) {
        const double e = s.sample_energies()[i];
        CHECK(std::abs(s.block(i, 1, -2) - s.amp_at(1, -2, e)) <= 1e-14);
    }
}

TEST_CASE("inelastic amplitudes are linear in a weak drive") {
    // First order: G(+-1, eps) = (V/2) g0(eps) g0(eps +- Omega).
    for (double v : {1e-3, 2e-3}) {
        ModelParams p = moderate();
        p.v_ac = v;
        const FloquetSMatrix s = smatrix(p);
        for (double e : {-2.0, -1.2, 0.0, 0.7}) {
            const complex up = complex(0.0, -p.gamma) * 0.5 * v * g0(e, p) * g0(e + p.omega, p);
            const complex dn = complex(0.0, -p.gamma) * 0.5 * v * g0(e, p) * g0(e - p.omega, p);
            CHECK(std::abs(s.amp_at(1, 0, e) - up) <= 1e-5 * std::abs(up));
            CHECK(std::abs(s.amp_at(-1, 0, e) - dn) <= 1e-5 * std::abs(dn));
            CHECK(std::abs(s.amp_at(2, 0, e)) <= 10.0 * v * v);
        }
    }
}

TEST_CASE("scattering energy flux equals W_C + W_T/2") {
    ModelParams second;
    second.epsilon0 = 0.4;
    second.v_ac = 0.7;
    second.omega = 0.3;
    second.mu = 0.2;
    for (const ModelParams& p : {moderate(), second}) {
        const FloquetSMatrix s = smatrix(p);
        const TimeDomainEngine eng(p, {});
        const std::vector<double> ts = period_grid(p, 32);
        double scale = 0.0, worst = 0.0, we_sum = 0.0, wc_sum = 0.0, p_sum = 0.0;
        for (double t : ts) {
            const PointFluxes f = eng.at(t);
            const double we = energy_flux_scattering(t, s);
            scale = std::max(scale, std::abs(we));
            worst = std::max(worst, std::abs(we - f.w_c - 0.5 * f.w_t));
            we_sum += we;
            wc_sum += f.w_c;
            p_sum += f.power;
        }
        INFO("eps0=" << p.epsilon0);
        CHECK(worst <= 1e-6 * scale);
        CHECK(we_sum / ts.size() == doctest::Approx(wc_sum / ts.size()).epsilon(1e-8));
        CHECK(we_sum / ts.size() == doctest::Approx(p_sum / ts.size()).epsilon(1e-8));
        CHECK(we_sum > 0.0);
    }
}

TEST_CASE("truncation gate on the sideband tail") {
    const ModelParams p = moderate();
    TruncationPolicy tiny;
    tiny.n_max_override = 2;
    const FloquetHarmonics h = harmonics_unchecked(p, tiny, sideband_grid(p, 2));
    CHECK_THROWS_AS(build_smatrix(h), TruncationUnconverged);
    CHECK(unitarity_defect(build_smatrix(h, std::numeric_limits<double>::infinity())) > 1e-6);
}

}
