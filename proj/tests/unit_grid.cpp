#include <doctest.h>

#include <cmath>

#include "hmlab/grid.hpp"

using namespace hmlab;
using grid::DiskGrid;
using grid::LogPolarGrid;

namespace {
constexpr double kPi = 3.14159265358979323846;

double grad_energy(const LogPolarGrid& g, const Field& f) {
    Gradient gr = g.gradient(f);
    Field e(f.nr, f.nth);
    for (size_t k = 0; k < e.v.size(); ++k)
        e.v[k] = gr.gr.v[k] * gr.gr.v[k] + gr.gt.v[k] * gr.gt.v[k];
    return g.integrate(e);
}
} // namespace

TEST_CASE("annulus construction and s-range") {
    LogPolarGrid g(1.0, std::exp(-4.0), 64, 64);
    CHECK(g.modulus() == doctest::Approx(4.0));
    CHECK(g.inner_radius() == doctest::Approx(std::exp(-4.0)));
    CHECK_THROWS(LogPolarGrid(0.5, 0.5, 64, 64));       // delta >= eta^2
    CHECK_THROWS(LogPolarGrid(1.0, -1.0, 64, 64));
    CHECK_THROWS(LogPolarGrid(1.0, 0.1, 3, 64));
}

TEST_CASE("annulus area quadrature") {
    for (double L : {4.0, 9.2103403719761836, 16.0}) {   // includes log(1e4)
        LogPolarGrid g(1.0, std::exp(-L), 64, 64);
        Field one(g.n_s(), g.n_theta(), 1.0);
        const double exact = kPi * (1.0 - std::exp(-2.0 * L));
        CHECK(g.integrate(one) == doctest::Approx(exact).epsilon(0.005));
    }
}

TEST_CASE("integrate 1/|x|^2 matches 2 pi log(eta^2/delta)") {
    LogPolarGrid g(1.0, std::exp(-4.0), 128, 16);
    Field f = g.sample([](double r, double) { return 1.0 / (r * r); });
    CHECK(g.integrate(f) == doctest::Approx(2.0 * kPi * 4.0).epsilon(0.01));
}

TEST_CASE("integrate zero field") {
    LogPolarGrid g(1.0, 0.1, 32, 8);
    Field f(g.n_s(), g.n_theta(), 0.0);
    CHECK(g.integrate(f) == 0.0);
}

TEST_CASE("quadrature exactness for r^n cos(k theta)") {
    LogPolarGrid g(1.0, std::exp(-2.0), 128, 128);
    const double rin = g.inner_radius();
    for (int n : {-1, 0, 1, 2}) {
        for (int k : {0, 1, 2}) {
            Field f = g.sample([&](double r, double th) { return std::pow(r, n) * std::cos(k * th); });
            double exact = 0.0;
            if (k == 0) {
                exact = (n == -2) ? 2.0 * kPi * 2.0
                                  : 2.0 * kPi * (std::pow(1.0, n + 2) - std::pow(rin, n + 2)) /
                                        (n + 2);
            }
            if (std::fabs(exact) > 1e-12)
                CHECK(g.integrate(f) == doctest::Approx(exact).epsilon(0.01));
            else
                CHECK(std::fabs(g.integrate(f)) < 1e-10);
        }
    }
}

TEST_CASE("gradient of log r and |x|^2") {
    LogPolarGrid g(1.0, std::exp(-4.0), 256, 16);
    Field f = g.sample([](double r, double) { return std::log(r); });
    Gradient gr = g.gradient(f);
    double worst = 0.0;
    for (int i = 0; i < g.n_s(); ++i)
        for (int j = 0; j < g.n_theta(); ++j)
            worst = std::max(worst, std::fabs(gr.gr(i, j) * g.r(i) - 1.0));
    CHECK(worst < 1e-3);

    Field f2 = g.sample([](double r, double) { return r * r; });
    Gradient g2 = g.gradient(f2);
    worst = 0.0;
    for (int i = 0; i < g.n_s(); ++i)
        for (int j = 0; j < g.n_theta(); ++j)
            worst = std::max(worst, std::fabs(g2.gr(i, j) / (2.0 * g.r(i)) - 1.0));
    CHECK(worst < 1e-3);
}

TEST_CASE("laplacian of Re z vanishes") {
    LogPolarGrid g(1.0, std::exp(-4.0), 256, 32);
    Field f = g.sample([](double r, double th) { return r * std::cos(th); });
    Field lap = g.laplacian_apply(f);
    double worst = 0.0;
    for (double v : lap.v) worst = std::max(worst, std::fabs(v));
    CHECK(worst < 1e-6);
}

TEST_CASE("integration by parts on fields vanishing at the boundary") {
    LogPolarGrid g(1.0, std::exp(-2.0), 192, 64);
    const double s0 = std::log(g.inner_radius());
    auto bump = [&](double r, double th, int k) {
        const double t = (std::log(r) - s0) / g.modulus();
        return std::sin(kPi * t) * std::cos(k * th + t);
    };
    Field f = g.sample([&](double r, double th) { return bump(r, th, 2); });
    Field h = g.sample([&](double r, double th) { return bump(r, th, 3); });
    Field lap = g.laplacian_apply(h);
    Gradient gf = g.gradient(f), gh = g.gradient(h);
    Field prod(f.nr, f.nth), dot(f.nr, f.nth), f2(f.nr, f.nth), h2(f.nr, f.nth);
    for (size_t k = 0; k < prod.v.size(); ++k) {
        prod.v[k] = f.v[k] * lap.v[k];
        dot.v[k] = gf.gr.v[k] * gh.gr.v[k] + gf.gt.v[k] * gh.gt.v[k];
        f2.v[k] = f.v[k] * f.v[k];
        h2.v[k] = h.v[k] * h.v[k];
    }
    const double lhs = g.integrate(prod) + g.integrate(dot);
    const double scale = std::sqrt(g.integrate(f2) * g.integrate(h2));
    CHECK(std::fabs(lhs) <= 1e-3 * scale);
}

TEST_CASE("gradient refinement convergence is better than second order") {
    auto err = [&](int n) {
        LogPolarGrid g(1.0, std::exp(-2.0), n, 32);
        Field f = g.sample([](double r, double th) { return std::exp(r) * std::cos(2 * th); });
        Gradient gr = g.gradient(f);
        double worst = 0.0;
        for (int i = 0; i < g.n_s(); ++i)
            for (int j = 0; j < g.n_theta(); ++j)
                worst = std::max(std::fabs(gr.gr(i, j) - std::exp(g.r(i)) * std::cos(2 * g.theta(j))),
                                 worst);
        return worst;
    };
    const double e1 = err(64), e2 = err(128);
    CHECK(e1 / e2 >= 3.0);
}

TEST_CASE("disk grid quadrature and solve basics") {
    DiskGrid g(1.0, 64, 32);
    Field one(g.n_rings(), g.n_theta(), 1.0);
    CHECK(g.integrate(one) == doctest::Approx(kPi).epsilon(0.005));

    // gradient of x1 is exact up to round-off away from one-sided rows
    Field f = g.sample([](double r, double th) { return r * std::cos(th); });
    Gradient gr = g.gradient(f);
    Field gx, gy;
    g.to_cartesian(gr, gx, gy);
    for (int i = 0; i < g.n_rings(); i += 7)
        for (int j = 0; j < g.n_theta(); j += 5) {
            CHECK(gx(i, j) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::fabs(gy(i, j)) < 1e-9);
        }
}

TEST_CASE("axisymmetric annulus mode") {
    LogPolarGrid g(1.0, std::exp(-4.0), 128, 1);
    Field one(g.n_s(), 1, 1.0);
    CHECK(g.integrate(one) == doctest::Approx(kPi * (1 - std::exp(-8.0))).epsilon(0.005));
}

#include "hmlab/sphere_grid.hpp"

TEST_CASE("two-chart sphere: area and transfer round trip") {
    sphere::TwoChartSphereGrid g(129);
    std::array<Field, 2> one{Field(g.n(), g.n(), 1.0), Field(g.n(), g.n(), 1.0)};
    CHECK(g.integrate(one) == doctest::Approx(4.0 * kPi).epsilon(0.01));

    // smooth field, transferred chart-to-chart and back on the overlap band
    auto f = g.sample([](const sphere::Vec3& p) { return p[0] + 0.5 * p[1] * p[2]; });
    Field to1, back;
    g.transfer(f[0], 1, to1);
    // the transfer only reaches nodes whose transition image lies inside the
    // source grid; fill the rest with exact samples so the round trip
    // isolates the interpolation error on the overlap band
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (std::abs(g.node(i, j)) < 0.8) to1(i, j) = f[1](i, j);
    g.transfer(to1, 0, back);
    double worst = 0.0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            const double r = std::abs(g.node(i, j));
            if (r < 0.8 || r > 1.25) continue;   // overlap band only
            worst = std::max(worst, std::fabs(back(i, j) - f[0](i, j)));
        }
    CHECK(worst < 1e-6);
}
