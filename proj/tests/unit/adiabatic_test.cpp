#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "acflux/adiabatic.hpp"
#include "acflux/errors.hpp"

using namespace acflux;

namespace {

ModelParams slow(double omega = 0.01) {
    ModelParams p;
    p.v_ac = 1.0;
    p.omega = omega;
    return p;
}

// Composite Simpson over mu +- 40 T of df/deps * g(eps).
template <class G>
double fermi_moment(const ModelParams& p, G g) {
    const int n = 40000;
    const double a = p.mu - 40.0 * p.temperature;
    const double h = 80.0 * p.temperature / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double e = a + i * h;
        const double x = (e - p.mu) / (2.0 * p.temperature);
        const double fd = -1.0 / (4.0 * p.temperature * std::cosh(x) * std::cosh(x));
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        s += w * fd * g(e);
    }
    return s * h / 3.0;
}

struct Residuals {
    double q = 0.0, i = 0.0, wt = 0.0, mean_p = 0.0;
};

Residuals expansion_residuals(const ModelParams& p, int n) {
    const FluxTrace tr = trace_period(p, {}, n);
    Residuals r;
    double mp = 0.0, ml = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const AdiabaticTerms a = adiabatic_terms(tr.times[k], p);
        r.q += std::abs(tr.q_dot[k] - a.q1 - a.q2);
        r.i += std::abs(tr.i_c[k] - a.ic1 - a.ic2);
        r.wt += std::abs(tr.w_t[k] - a.wt1 - a.wt2);
        mp += tr.power[k];
        ml += a.p_lowfreq;
    }
    r.mean_p = std::abs(mp - ml) / n;
    return r;
}

} // namespace

TEST_SUITE("adiabatic") {

TEST_CASE("zero temperature closed forms") {
    ModelParams fig2;
    for (const ModelParams& p : {slow(), fig2}) {
        for (double frac : {0.0, 0.1, 0.23, 0.5, 0.71}) {
            const double t = frac * p.period();
            const AdiabaticTerms a = adiabatic_terms(t, p);
            const double rho = frozen_dos(t, p.mu, p);
            const double v = level_velocity(t, p);
            CHECK(a.q1 == 0.0);
            CHECK(a.ic1 == doctest::Approx(rho * v / kPlanck).epsilon(1e-14));
            CHECK(a.q2 >= 0.0);
            CHECK(a.q2 == doctest::Approx(kResistanceQuantum * a.ic1 * a.ic1).epsilon(1e-13));
            CHECK(a.p_lowfreq == doctest::Approx(a.q2).epsilon(1e-13));
            CHECK(a.we1 == a.q1);
            CHECK(a.we2 == a.q2);
        }
        CHECK(ic1(0.0, p) == 0.0);
        CHECK(q2(0.0, p) == 0.0);
        CHECK(std::abs(ic1(0.5 * p.period(), p)) < 1e-17);
        CHECK(std::abs(q2(0.5 * p.period(), p)) < 1e-30);
    }
}

TEST_CASE("contact flux vanishes when the level crosses the chemical potential") {
    ModelParams p;
    const double t = std::acos(-p.epsilon0 / p.v_ac) / p.omega;
    REQUIRE(std::abs(level_energy(t, p)) < 1e-12);
    CHECK(std::abs(wt1(t, p)) <= 1e-12 * std::abs(ic1(t, p)));
}

TEST_CASE("first-order heat at finite temperature") {
    for (double temp : {0.05, 0.2}) {
        ModelParams p = slow();
        p.temperature = temp;
        p.mu = 0.3;
        const double t = 0.2 * p.period();
        const double ed = level_energy(t, p);
        const double v = level_velocity(t, p);
        const double ref = v / kPlanck * fermi_moment(p, [&](double e) {
            const double u = e - ed;
            return (p.mu - e) * p.gamma / (u * u + 0.25);
        });
        INFO("T=" << temp);
        CHECK(q1(t, p) == doctest::Approx(ref).epsilon(1e-9));
        CHECK(q1(p.period() - t, p) == doctest::Approx(-q1(t, p)).epsilon(1e-12));
        CHECK(q1(0.0, p) == 0.0);
        CHECK(std::abs(q1(t, p)) > 0.0);
    }
}

TEST_CASE("order-by-order heat balance at finite temperature") {
    ModelParams p = slow();
    p.temperature = 0.1;
    p.mu = -0.4;
    for (double frac : {0.1, 0.35, 0.8}) {
        const AdiabaticTerms a = adiabatic_terms(frac * p.period(), p);
        CHECK(a.q1 == doctest::Approx(a.we1 - p.mu * a.ic1).epsilon(1e-12));
        CHECK(a.q2 == doctest::Approx(a.we2 - p.mu * a.ic2).epsilon(1e-12));
    }
    ModelParams z = p;
    z.mu = 0.0;
    const AdiabaticTerms b = adiabatic_terms(0.3 * z.period(), z);
    CHECK(b.we1 == b.q1);
    CHECK(b.we2 == b.q2);
}

TEST_CASE("finite temperature approaches the closed forms") {
    ModelParams p = slow();
    const double t = 0.3 * p.period();
    const AdiabaticTerms a0 = adiabatic_terms(t, p);
    auto diff = [&](double temp) {
        ModelParams q = p;
        q.temperature = temp;
        const AdiabaticTerms a = adiabatic_terms(t, q);
        return std::array<double, 6>{std::abs(a.ic1 - a0.ic1), std::abs(a.ic2 - a0.ic2), std::abs(a.q2 - a0.q2),
                                     std::abs(a.wt1 - a0.wt1), std::abs(a.wt2 - a0.wt2),
                                     std::abs(a.p_lowfreq - a0.p_lowfreq)};
    };
    const std::array<double, 6> scale = {std::abs(a0.ic1), std::abs(a0.ic2), std::abs(a0.q2),
                                         std::abs(a0.wt1), std::abs(a0.wt2), std::abs(a0.p_lowfreq)};
    const auto d3 = diff(1e-3);
    const auto d4 = diff(1e-4);
    for (std::size_t k = 0; k < 6; ++k) {
        INFO("term " << k << " d(1e-3)=" << d3[k] << " d(1e-4)=" << d4[k]);
        CHECK(d3[k] <= 1e-3 * scale[k]);
        CHECK(d4[k] <= 0.1 * d3[k] + 1e-12 * scale[k]);
    }
}

TEST_CASE("expansion residuals scale as Omega cubed") {
    const Residuals a = expansion_residuals(slow(0.02), 64);
    const Residuals b = expansion_residuals(slow(0.01), 64);
    INFO("Q " << a.q / b.q << " I " << a.i / b.i << " W_T " << a.wt / b.wt << " mean P " << a.mean_p / b.mean_p);
    CHECK(a.q / b.q >= 8.0);
    CHECK(a.i / b.i >= 8.0);
    CHECK(a.wt / b.wt >= 8.0);
    CHECK(a.mean_p / b.mean_p >= 8.0);
}

TEST_CASE("period averages of the contact-flux orders vanish") {
    const ModelParams p = slow();
    const AdiabaticReport r = adiabatic_report(p, {}, 64);
    CHECK(std::abs(period_mean(r.wt1)) <= 1e-12 * max_abs(r.wt1));
    CHECK(std::abs(period_mean(r.wt2)) <= 1e-12 * max_abs(r.wt2));
    CHECK(std::abs(period_mean(r.ic1)) <= 1e-12 * max_abs(r.ic1));
    CHECK_FALSE(r.exact_inputs);
    CHECK(r.r_fit.slope == doctest::Approx(kResistanceQuantum).epsilon(0.02));
}

TEST_CASE("joule fit") {
    const ModelParams p = slow();
    const AdiabaticReport r = adiabatic_report(p, {}, 64);
    const JouleFit f = joule_fit(r.q2, r.ic1);
    CHECK(f.slope == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(f.max_residual <= 1e-14 * max_abs(r.q2));
    CHECK(f.points == 64);

    const std::vector<double> zeros(8, 0.0);
    CHECK_THROWS_AS(joule_fit(zeros, zeros), DegenerateFit);
    CHECK_THROWS_AS(joule_fit(std::vector<double>(3, 1.0), zeros), InvalidParams);
}

TEST_CASE("masked resistance near the drive extrema") {
    const std::vector<double> ic = {0.0, 1e-9, 0.5, -1.0, 2e-6};
    const std::vector<double> qt = {1.0, 1.0, 1.0, -3.0, 1.0};
    const auto r = r_tilde_series(qt, ic);
    CHECK_FALSE(r[0].has_value());
    CHECK_FALSE(r[1].has_value());
    CHECK(*r[2] == 4.0);
    CHECK(*r[3] == -3.0);
    CHECK(r[4].has_value());

    const ModelParams p = slow(0.05);
    CHECK_FALSE(r_tilde(0.0, p, {}).has_value());
    const double t = 0.3 * p.period();
    const auto v = r_tilde(t, p, {});
    REQUIRE(v.has_value());
    const double i1 = ic1(t, p);
    CHECK(*v == doctest::Approx(heat_flux_tilde(t, p, {}) / (i1 * i1)).epsilon(1e-14));
}

TEST_CASE("Fig. 2 drive: resistances and the first-order current") {
    const ModelParams p;
    const FluxTrace tr = trace_period(p, {}, 64);
    const AdiabaticReport r = adiabatic_report(p, {}, 64, &tr);
    CHECK(r.exact_inputs);
    CHECK(r.r_fit.slope == doctest::Approx(kResistanceQuantum).epsilon(0.01));
    CHECK(r.r_fit.slope > 0.0);

    std::vector<double> vals;
    for (const auto& v : r.r_tilde) {
        if (v) vals.push_back(*v);
    }
    REQUIRE(vals.size() > 10);
    CHECK(*std::min_element(vals.begin(), vals.end()) < 0.0);
    std::vector<double> mags;
    for (double v : vals) mags.push_back(std::abs(v));
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    const double median = mags[mags.size() / 2];
    const double spread = *std::max_element(vals.begin(), vals.end()) - *std::min_element(vals.begin(), vals.end());
    CHECK(spread > 10.0 * median);

    double peak = 0.0, dev = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        peak = std::max(peak, std::abs(tr.i_c[k]));
        dev = std::max(dev, std::abs(tr.i_c[k] - r.ic1[k]));
    }
    // Relative O(Omega): V Omega / Gamma^2 = 1e-2 sets the scale.
    CHECK(dev <= 5.0 * p.v_ac * p.omega * peak);
}

}
