#include <benchmark/benchmark.h>

#include <cmath>

#include "hmlab/harmonic.hpp"
#include "hmlab/lorentz.hpp"
#include "hmlab/spectral.hpp"
#include "hmlab/wente.hpp"

using namespace hmlab;

namespace {

void BM_DiskPoissonSolve(benchmark::State& state) {
    const int n = int(state.range(0));
    grid::DiskGrid g(1.0, n, 64);
    Field rhs = g.sample([](double r, double th) { return std::cos(3 * th) * r * (1 - r); });
    for (auto _ : state) {
        Field phi = wente::solve_dirichlet(g, rhs);
        benchmark::DoNotOptimize(phi.v.data());
    }
    state.SetItemsProcessed(state.iterations() * int64_t(g.n_rings()) * g.n_theta());
}
BENCHMARK(BM_DiskPoissonSolve)->Arg(256)->Arg(1024)->Arg(4096);

void BM_AnnulusGradient(benchmark::State& state) {
    const int n = int(state.range(0));
    grid::LogPolarGrid g(1.0, std::exp(-8.0), n, 128);
    Field f = g.sample([](double r, double th) { return std::cos(5 * th) / r; });
    for (auto _ : state) {
        Gradient gr = g.gradient(f);
        benchmark::DoNotOptimize(gr.gr.v.data());
    }
    state.SetItemsProcessed(state.iterations() * int64_t(n) * 128);
}
BENCHMARK(BM_AnnulusGradient)->Arg(128)->Arg(512);

void BM_LorentzNorms(benchmark::State& state) {
    const int n = int(state.range(0));
    grid::LogPolarGrid g(1.0, std::exp(-8.0), n, n);
    Field f = g.sample([](double r, double) { return 1.0 / r; });
    for (auto _ : state) {
        auto rf = lorentz::rearrange(g, f);
        benchmark::DoNotOptimize(lorentz::l21_norm(rf));
    }
    state.SetItemsProcessed(state.iterations() * int64_t(n) * n);
}
BENCHMARK(BM_LorentzNorms)->Arg(128)->Arg(256);

void BM_FourierSplit(benchmark::State& state) {
    grid::LogPolarGrid g(1.0, std::exp(-4.0), 128, 128);
    Field f = g.sample([](double r, double th) {
        return r * std::cos(th) + std::cos(3 * th) / (r * r * r) + std::log(r);
    });
    for (auto _ : state) {
        auto d = harmonic::fourier_split(g, f, 16);
        benchmark::DoNotOptimize(d.log_coeff);
    }
}
BENCHMARK(BM_FourierSplit);

void BM_JacobiAssembly(benchmark::State& state) {
    maps::RationalSphereMap idm{maps::RationalMapSpec{}};
    spectral::SphereWeightSpec w;
    for (auto _ : state) {
        auto form = spectral::assemble_jacobi_sphere(idm, 3.5, int(state.range(0)), 48, w);
        benchmark::DoNotOptimize(form.dof);
    }
}
BENCHMARK(BM_JacobiAssembly)->Arg(60)->Arg(120);

void BM_WeightedEigenSmallest(benchmark::State& state) {
    maps::RationalSphereMap idm{maps::RationalMapSpec{}};
    spectral::SphereWeightSpec w;
    auto form = spectral::assemble_jacobi_sphere(idm, 3.5, int(state.range(0)), 32, w);
    spectral::EigOptions opt;
    opt.count = 10;
    for (auto _ : state) {
        auto rep = spectral::solve_weighted_eigen(form, opt);
        benchmark::DoNotOptimize(rep.eigenvalues[0]);
    }
}
BENCHMARK(BM_WeightedEigenSmallest)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
