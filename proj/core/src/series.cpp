#include "hmlab/series.hpp"

#include <cmath>
#include <stdexcept>

namespace hmlab::series {

WeightedSeriesInstance::WeightedSeriesInstance(std::vector<double> a_, std::vector<double> b_,
                                               double gamma_, double mu_, double eps0_, int s1_,
                                               int s2_)
    : a(std::move(a_)), b(std::move(b_)), gamma(gamma_), mu(mu_), eps0(eps0_), s1(s1_), s2(s2_) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must be in (0,1)");
    if (!(mu > gamma && mu < 1.0)) throw std::invalid_argument("mu must be in (gamma,1)");
    if (!(eps0 >= 0.0)) throw std::invalid_argument("eps0 must be nonnegative");
    if (s1 > s2 || s1 < 0 || s2 >= int(a.size()))
        throw std::invalid_argument("window [s1,s2] out of range");
    if (b.size() != a.size()) throw std::invalid_argument("a,b length mismatch");
    for (double x : a)
        if (x < 0.0) throw std::invalid_argument("a must be nonnegative");
    for (double x : b)
        if (x < 0.0) throw std::invalid_argument("b must be nonnegative");
    // hypothesis check
    for (int k = s1; k <= s2; ++k) {
        double conv = 0.0;
        for (int n = 0; n < int(a.size()); ++n) conv += std::pow(gamma, std::abs(n - k)) * a[n];
        if (a[k] > b[k] + eps0 * conv * (1.0 + 1e-12))
            throw std::invalid_argument("hypothesis a_k <= b_k + eps0 sum gamma^|n-k| a_n fails");
    }
}

double case_bound(int which, double mu, double gamma) {
    const double gu = 1.0 / (1.0 - gamma * mu);        // 1/(1 - gamma mu)
    const double gd = 1.0 / (1.0 - gamma / mu);        // 1/(1 - gamma/mu)
    switch (which) {
        case 1: return gu + gd + mu * gamma * gu;
        case 2: return gd + mu * gamma * gu;
        case 3: return 2.0 * gu + gd;
        case 4: return gu + gd;
    }
    throw std::invalid_argument("case_bound: which must be 1..4");
}

double case_constant(double mu, double gamma) {
    double c = 0.0;
    for (int w = 1; w <= 4; ++w) c = std::max(c, case_bound(w, mu, gamma));
    return c;
}

BoundCheck series_bound_check(const WeightedSeriesInstance& inst, int k) {
    if (k < inst.s1 || k > inst.s2)
        throw std::invalid_argument("series_bound_check: k outside window");
    BoundCheck out;
    out.c_used = case_constant(inst.mu, inst.gamma);
    double tail = 0.0;
    for (int l = 0; l < int(inst.a.size()); ++l)
        tail += std::pow(inst.mu, std::abs(l - k)) * inst.a[l];
    for (int l = inst.s1; l <= inst.s2; ++l) {
        out.lhs += std::pow(inst.mu, std::abs(l - k)) * inst.a[l];
        out.rhs += std::pow(inst.mu, std::abs(l - k)) * inst.b[l];
    }
    out.rhs += out.c_used * inst.eps0 * tail;
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
    return out;
}

ConvolutionBound discrete_convolution_bound(double gamma, double mu, int s1, int s2, int n,
                                            int k) {
    if (!(gamma > 0 && gamma < mu && mu < 1.0))
        throw std::invalid_argument("discrete_convolution_bound: need 0 < gamma < mu < 1");
    if (s1 > s2 || k < s1 || k > s2)
        throw std::invalid_argument("discrete_convolution_bound: need s1 <= k <= s2");
    ConvolutionBound out;
    for (int l = s1; l <= s2; ++l)
        out.value += std::pow(gamma, std::abs(n - l)) * std::pow(mu, std::abs(l - k));
    out.bound = case_constant(mu, gamma) * std::pow(mu, std::abs(n - k));
    out.holds = out.value <= out.bound * (1.0 + 1e-12);
    return out;
}

HarmonicSeriesReport harmonic_series_weights(const harmonic::AnnulusFourierDecomposition& d,
                                             double mu, int j) {
    if (!(mu > 0.25 && mu < 1.0))
        throw std::invalid_argument("harmonic_series_weights: mu must be in (1/4, 1)");
    HarmonicSeriesReport rep;
    const double eta = d.eta;
    const double delta = d.eta * d.inner_radius;
    rep.s1 = int(std::floor(std::log2(1.0 / eta)));
    rep.s2 = int(std::floor(std::log2(eta / delta)));
    if (j < rep.s1 || j > rep.s2)
        throw std::invalid_argument("harmonic_series_weights: j outside [s1, s2]");
    const double beta = -std::log2(mu);

    const double log2ring = 2.0 * 3.14159265358979323846 * d.log_coeff * d.log_coeff *
                            std::log(2.0);
    double total = 0.0;
    for (int l = rep.s1; l <= rep.s2; ++l) {
        const double hi = std::pow(2.0, -l);
        const double lo = 0.5 * hi;
        const double e = d.energy_plus(lo, hi) + d.energy_minus(lo, hi) + log2ring;
        rep.ring_energy.push_back(e);
        total += e;
        rep.lhs += std::pow(mu, std::abs(l - j)) * e;
    }
    double smu = 0.0;
    for (int l = rep.s1; l <= rep.s2; ++l) smu += std::pow(mu, std::abs(l - j));
    rep.term_plus = std::pow(std::pow(2.0, -j) / eta, beta) * total;
    rep.term_minus = std::pow(delta / (std::pow(2.0, -j) * eta), beta) * total;
    rep.term_log = d.log_coeff * d.log_coeff * smu;
    const double den = rep.term_plus + rep.term_minus + rep.term_log;
    rep.measured_c = den > 0.0 ? rep.lhs / den : 0.0;
    return rep;
}

} // namespace hmlab::series
