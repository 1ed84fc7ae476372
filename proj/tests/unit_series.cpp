#include <doctest.h>

#include <cmath>
#include <random>

#include "hmlab/series.hpp"

using namespace hmlab;
using series::WeightedSeriesInstance;

TEST_CASE("case constant dominates the four case bounds") {
    for (auto [g, m] : {std::pair{0.25, 0.5}, {0.5, 0.75}, {0.3, 0.9}}) {
        const double C = series::case_constant(m, g);
        for (int w = 1; w <= 4; ++w) CHECK(C >= series::case_bound(w, m, g));
    }
}

TEST_CASE("hypothesis-checking constructor") {
    std::vector<double> a = {1.0, 1.0, 1.0}, b = {1.0, 1.0, 1.0};
    CHECK_NOTHROW(WeightedSeriesInstance(a, b, 0.25, 0.5, 0.0, 0, 2));
    std::vector<double> b0 = {0.0, 0.0, 0.0};
    CHECK_THROWS(WeightedSeriesInstance(a, b0, 0.25, 0.5, 0.0, 0, 2));
    CHECK_NOTHROW(WeightedSeriesInstance(a, b0, 0.25, 0.5, 1.0, 0, 2));
    CHECK_THROWS(WeightedSeriesInstance(a, b, 0.5, 0.25, 0.0, 0, 2));
}

TEST_CASE("bound check on the exact-equality case") {
    std::vector<double> a = {0.3, 0.7, 0.1, 0.9};
    WeightedSeriesInstance inst(a, a, 0.25, 0.5, 0.0, 0, 3);
    for (int k = 0; k <= 3; ++k) {
        auto chk = series::series_bound_check(inst, k);
        CHECK(chk.holds);
        CHECK(chk.lhs == doctest::Approx(chk.rhs));
    }
}

TEST_CASE("geometric sequence with slack") {
    const double gamma = 0.25, mu = 0.5, eps0 = 0.05;
    std::vector<double> a(12), b(12, 0.0);
    for (int n = 0; n < 12; ++n) a[n] = std::pow(gamma, n);
    for (int n = 0; n < 12; ++n) b[n] = a[n];
    WeightedSeriesInstance inst(a, b, gamma, mu, eps0, 2, 9);
    for (int k = 2; k <= 9; ++k) {
        auto chk = series::series_bound_check(inst, k);
        CHECK(chk.holds);
        CHECK(chk.rhs - chk.lhs > 0.0);
    }
}

TEST_CASE("discrete convolution bound in all four cases") {
    const double gamma = 0.3, mu = 0.6;
    const int s1 = 3, s2 = 12;
    for (int k : {3, 7, 12}) {
        for (int n : {0, 2, 3, 5, k, 12, 14, 20}) {
            auto res = series::discrete_convolution_bound(gamma, mu, s1, s2, n, k);
            CHECK(res.holds);
        }
    }
    CHECK_THROWS(series::discrete_convolution_bound(0.6, 0.3, 0, 4, 2, 2));
}

TEST_CASE("exhaustive small windows have zero violations") {
    const double vals[3] = {0.0, 0.5, 1.0};
    for (auto [gamma, mu] : {std::pair{0.25, 0.5}, {0.5, 0.75}}) {
        for (int N = 2; N <= 4; ++N) {
            const int total = int(std::pow(3, N + 1));
            for (int ai = 0; ai < total; ++ai)
                for (int bi = 0; bi < total; ++bi) {
                    std::vector<double> a(N + 1), b(N + 1);
                    int ta = ai, tb = bi;
                    for (int i = 0; i <= N; ++i) {
                        a[i] = vals[ta % 3];
                        ta /= 3;
                        b[i] = vals[tb % 3];
                        tb /= 3;
                    }
                    bool ok = true;
                    const double eps0 = 0.25;
                    for (int k = 0; k <= N && ok; ++k) {
                        double conv = 0.0;
                        for (int n = 0; n <= N; ++n)
                            conv += std::pow(gamma, std::abs(n - k)) * a[n];
                        ok = a[k] <= b[k] + eps0 * conv + 1e-15;
                    }
                    if (!ok) continue;
                    WeightedSeriesInstance inst(a, b, gamma, mu, eps0, 0, N);
                    for (int k = 0; k <= N; ++k)
                        CHECK(series::series_bound_check(inst, k).holds);
                }
        }
    }
}

TEST_CASE("monotonicity in b") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> a(10), b(10);
        for (int i = 0; i < 10; ++i) {
            a[i] = u(rng);
            b[i] = u(rng) + 1.0;
        }
        WeightedSeriesInstance inst(a, b, 0.25, 0.5, 0.1, 1, 8);
        auto base = series::series_bound_check(inst, 4);
        std::vector<double> b2 = b;
        b2[5] += 0.7;
        WeightedSeriesInstance inst2(a, b2, 0.25, 0.5, 0.1, 1, 8);
        auto more = series::series_bound_check(inst2, 4);
        CHECK(more.rhs >= base.rhs);
        CHECK(more.holds);
    }
}

TEST_CASE("harmonic ring-energy bookkeeping patterns") {
    grid::LogPolarGrid g(0.5, 0.5 * 0.5 * std::pow(2.0, -10.0), 64, 32);
    // h = Re z: near the outer window edge the outer structural term carries
    // the weighted ring sum and dominates the inner one
    {
        harmonic::AnnulusFourierDecomposition d;
        d.max_mode = 1;
        d.eta = g.eta();
        d.inner_radius = g.inner_radius();
        d.pos = {1.0};
        d.neg = {0.0};
        auto rep = series::harmonic_series_weights(d, 0.5, 1);
        CHECK(rep.term_plus > 10.0 * rep.term_minus);
        CHECK(rep.term_log == 0.0);
        // and the plus term alone controls the sum at every admissible j
        for (int j = rep.s1; j <= rep.s2; ++j) {
            auto r = series::harmonic_series_weights(d, 0.5, j);
            CHECK(r.lhs <= 5.0 * r.term_plus);
        }
    }
    // h = Re 1/z: mirrored pattern at the inner edge
    {
        harmonic::AnnulusFourierDecomposition d;
        d.max_mode = 1;
        d.eta = g.eta();
        d.inner_radius = g.inner_radius();
        d.pos = {0.0};
        d.neg = {1.0};
        auto rep0 = series::harmonic_series_weights(d, 0.5, 1);
        auto rep = series::harmonic_series_weights(d, 0.5, rep0.s2);
        CHECK(rep.term_minus > 10.0 * rep.term_plus);
        for (int j = rep.s1; j <= rep.s2; ++j) {
            auto r = series::harmonic_series_weights(d, 0.5, j);
            CHECK(r.lhs <= 5.0 * r.term_minus);
        }
    }
    // h = C0 log|z|: the sum is exactly proportional to C0^2
    {
        harmonic::AnnulusFourierDecomposition d;
        d.max_mode = 1;
        d.eta = g.eta();
        d.inner_radius = g.inner_radius();
        d.pos = {0.0};
        d.neg = {0.0};
        d.log_coeff = 0.05;
        auto rep = series::harmonic_series_weights(d, 0.5, 5);
        CHECK(rep.term_log > 0.0);
        for (double e : rep.ring_energy)
            CHECK(e == doctest::Approx(2 * 3.14159265358979 * 0.0025 * std::log(2.0)));
        // lhs = 2 pi log 2 * C0^2 * sum mu^{|l-j|} = 2 pi log 2 * term_log
        CHECK(rep.lhs == doctest::Approx(2 * 3.14159265358979 * std::log(2.0) * rep.term_log));
        d.log_coeff = 0.1;
        auto rep2 = series::harmonic_series_weights(d, 0.5, 5);
        CHECK(rep2.lhs == doctest::Approx(4.0 * rep.lhs));
    }
}
