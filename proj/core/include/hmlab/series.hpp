#pragma once

#include <vector>

#include "hmlab/harmonic.hpp"

namespace hmlab::series {

/// Pair of nonnegative sequences satisfying the conditional hypothesis
/// a_k <= b_k + eps0 sum_n gamma^{|n-k|} a_n for every k in the window;
/// the constructor rejects instances violating it.
struct WeightedSeriesInstance {
    std::vector<double> a, b;   // support 0..N
    double gamma, mu, eps0;
    int s1, s2;

    WeightedSeriesInstance(std::vector<double> a_, std::vector<double> b_, double gamma_,
                           double mu_, double eps0_, int s1_, int s2_);
};

/// C_{mu,gamma} assembled as the maximum of the four case bounds of the
/// weighted-series lemma proof.
double case_constant(double mu, double gamma);
/// The individual case bounds (1..4), exposed for the property tests.
double case_bound(int which, double mu, double gamma);

struct BoundCheck {
    double lhs = 0.0, rhs = 0.0, c_used = 0.0;
    bool holds = false;
};
/// lhs = sum_{l in window} mu^{|l-k|} a_l against
/// rhs = sum_{l in window} mu^{|l-k|} b_l + C eps0 sum_{l>=0} mu^{|l-k|} a_l.
BoundCheck series_bound_check(const WeightedSeriesInstance& inst, int k);

struct ConvolutionBound {
    double value = 0.0, bound = 0.0;
    bool holds = false;
};
/// Exact sum_{l=s1}^{s2} gamma^{|n-l|} mu^{|l-k|} against C_{mu,gamma} mu^{|n-k|}.
ConvolutionBound discrete_convolution_bound(double gamma, double mu, int s1, int s2, int n, int k);

/// Dyadic ring bookkeeping for the harmonic part of a neck field. Rings are
/// A_l = B_{2^-l} \ B_{2^-l-1}; the window is [floor(log2 1/eta),
/// floor(log2 (eta/delta))] (base-2 logs throughout).
struct HarmonicSeriesReport {
    int s1 = 0, s2 = 0;
    std::vector<double> ring_energy;        // exact per-ring energies, l = s1..s2
    double lhs = 0.0;                       // sum mu^{|l-j|} ring energy
    double term_plus = 0.0;                 // (2^-j/eta)^beta * E
    double term_minus = 0.0;                // (delta/(2^-j eta))^beta * E
    double term_log = 0.0;                  // C0^2 sum mu^{|l-j|}
    double measured_c = 0.0;                // lhs / (term_plus + term_minus + term_log)
};
HarmonicSeriesReport harmonic_series_weights(const harmonic::AnnulusFourierDecomposition& d,
                                             double mu, int j);

} // namespace hmlab::series
