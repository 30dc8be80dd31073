#include <array>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "acflux/errors.hpp"
#include "acflux/quadrature.hpp"

using namespace acflux;

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 16, 40}) {
        const GaussRule r = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : r.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
            const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
            INFO("n=" << n << " d=" << d);
            CHECK(std::abs(s - exact) < 1e-13);
        }
        for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK_THROWS_AS(gauss_legendre(0), InvalidParams);
}

TEST_CASE("adaptive kronrod on smooth and peaked integrands") {
    const std::array<Segment, 1> seg{Segment::finite(0.0, 1.0)};
    auto r = integrate_adaptive<2>([](double x) { return std::array<double, 2>{std::exp(x), std::sqrt(x)}; }, seg);
    CHECK(r.value[0] == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    CHECK(r.value[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-11));

    // Narrow Lorentzian: int_{-10}^{10} w/(x^2 + w^2) = 2 atan(10/w)
    const double w = 1e-4;
    const std::array<Segment, 2> two{Segment::finite(-10.0, 0.3), Segment::finite(0.3, 10.0)};
    auto l = integrate_adaptive<1>([w](double x) { return std::array<double, 1>{w / (x * x + w * w)}; }, two);
    CHECK(l.value[0] == doctest::Approx(2.0 * std::atan(10.0 / w)).epsilon(1e-11));
}

TEST_CASE("mapped lower tail") {
    const std::array<Segment, 2> seg{Segment::tail_below(-2.0), Segment::finite(-2.0, 0.0)};
    // int_{-inf}^0 1/(1+x^2) = pi/2
    auto r = integrate_adaptive<1>([](double x) { return std::array<double, 1>{1.0 / (1.0 + x * x)}; }, seg);
    CHECK(r.value[0] == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
    // int_{-inf}^{-2} exp(x) = exp(-2)
    const std::array<Segment, 1> tail{Segment::tail_below(-2.0)};
    auto e = integrate_adaptive<1>([](double x) { return std::array<double, 1>{std::exp(x)}; }, tail);
    CHECK(e.value[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("deterministic and failing loudly") {
    const std::array<Segment, 1> seg{Segment::finite(-1.0, 1.0)};
    auto f = [](double x) { return std::array<double, 1>{std::cos(40.0 * x) / (1.0 + 25.0 * x * x)}; };
    auto a = integrate_adaptive<1>(f, seg);
    auto b = integrate_adaptive<1>(f, seg);
    CHECK(a.value[0] == b.value[0]);
    CHECK(a.evaluations == b.evaluations);

    AdaptiveOptions tight{1e-15, 0.0, 8};
    const std::array<Segment, 1> near_zero{Segment::finite(1e-3, 1.0)};
    auto g = [](double x) { return std::array<double, 1>{std::sin(1.0 / x)}; };
    CHECK_THROWS_AS(integrate_adaptive<1>(g, near_zero, tight), QuadratureFailure);

    // A pole on a Kronrod node is reported, not summed into inf/NaN.
    auto h = [](double x) { return std::array<double, 1>{1.0 / std::sqrt(std::abs(x))}; };
    CHECK_THROWS_AS(integrate_adaptive<1>(h, seg), QuadratureFailure);
}

}
