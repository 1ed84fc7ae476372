#include <doctest.h>

#include <cmath>
#include <random>

#include "hmlab/lorentz.hpp"

using namespace hmlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("norms of grad log on degenerating annuli") {
    // Closed forms: L2 = sqrt(2 pi L); the weak quasi-norm tends to sqrt(pi);
    // the layer-cake L21 integral evaluates to sqrt(pi)(L + log 2 + o(1)).
    for (double L : {4.0, 8.0, 16.0}) {
        grid::LogPolarGrid g(1.0, std::exp(-L), 256, 256);
        Field f = g.sample([](double r, double) { return 1.0 / r; });
        auto rf = lorentz::rearrange(g, f);
        CHECK(lorentz::l2_norm(rf) == doctest::Approx(std::sqrt(2 * kPi * L)).epsilon(0.01));
        CHECK(lorentz::l2_weak_quasinorm(rf) == doctest::Approx(std::sqrt(kPi)).epsilon(0.02));
        const double l21_exact =
            std::sqrt(kPi) * (L + std::log1p(std::sqrt(1.0 - std::exp(-2 * L))));
        CHECK(lorentz::l21_norm(rf) == doctest::Approx(l21_exact).epsilon(0.01));
    }
}

TEST_CASE("zero and constant fields") {
    grid::LogPolarGrid g(1.0, 0.01, 64, 32);
    Field z(g.n_s(), g.n_theta(), 0.0);
    auto rz = lorentz::rearrange(g, z);
    CHECK(lorentz::l2_norm(rz) == 0.0);
    CHECK(lorentz::l21_norm(rz) == 0.0);

    grid::DiskGrid d(1.0, 64, 32);
    Field c(d.n_rings(), d.n_theta(), 3.0);
    auto rf = lorentz::rearrange(d, c);
    CHECK(lorentz::l2_norm(rf) == doctest::Approx(3.0 * std::sqrt(kPi)).epsilon(0.005));
    // constant field: sup attained as lambda -> c from below
    CHECK(lorentz::l2_weak_quasinorm(rf) ==
          doctest::Approx(3.0 * std::sqrt(kPi * 1.0)).epsilon(0.005));
}

TEST_CASE("two-level field layer cake") {
    // value 2 on half the measure, 0 elsewhere
    std::vector<double> vals = {2, 2, 0, 0}, areas = {0.25, 0.25, 0.25, 0.25};
    auto rf = lorentz::rearrange(vals, areas);
    CHECK(lorentz::l2_weak_quasinorm(rf) == doctest::Approx(2.0 * std::sqrt(0.5)));
    CHECK(lorentz::l21_norm(rf) == doctest::Approx(2.0 * std::sqrt(0.5)));
    // indicator of half-area set with value 1
    std::vector<double> vals2 = {1, 0};
    std::vector<double> areas2 = {0.5, 0.5};
    CHECK(lorentz::l21_norm(lorentz::rearrange(vals2, areas2)) ==
          doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("norm ordering and homogeneity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    grid::LogPolarGrid g(1.0, 0.01, 48, 32);
    for (int rep = 0; rep < 25; ++rep) {
        Field f(g.n_s(), g.n_theta());
        for (auto& x : f.v) x = std::pow(u(rng), 3.0) * 10.0 - 2.0;
        auto rf = lorentz::rearrange(g, f);
        const double weak = lorentz::l2_weak_quasinorm(rf);
        const double l2 = lorentz::l2_norm(rf);
        const double l21 = lorentz::l21_norm(rf);
        CHECK(weak <= l2 * (1 + 1e-12));
        CHECK(l2 <= l21 * (1 + 1e-12));
        // 1-homogeneity
        Field f3 = f;
        f3 *= 3.0;
        auto rf3 = lorentz::rearrange(g, f3);
        CHECK(lorentz::l2_norm(rf3) == doctest::Approx(3 * l2));
        CHECK(lorentz::l2_weak_quasinorm(rf3) == doctest::Approx(3 * weak));
        CHECK(lorentz::l21_norm(rf3) == doctest::Approx(3 * l21));
    }
}

TEST_CASE("L21 over L2 gap grows with the annulus modulus") {
    double prev = 0.0;
    for (double L : {4.0, 8.0, 16.0}) {
        grid::LogPolarGrid g(1.0, std::exp(-L), 192, 64);
        Field f = g.sample([](double r, double) { return 1.0 / r; });
        auto rf = lorentz::rearrange(g, f);
        const double ratio = lorentz::l21_norm(rf) / lorentz::l2_norm(rf);
        CHECK(ratio > prev);
        // honest asymptotics of the layer-cake ratio: (L + log 2)/sqrt(2 L)
        CHECK(ratio == doctest::Approx((L + std::log(2.0)) / std::sqrt(2 * L)).epsilon(0.02));
        prev = ratio;
    }
}
