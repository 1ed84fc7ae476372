#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hmlab/field.hpp"
#include "hmlab/grid.hpp"

namespace hmlab::harmonic {

/// Fourier-mode content of a harmonic field on an annulus:
///   f = constant + log_coeff * log|z| + Re sum_{n>0} pos[n-1] z^n
///                                     + Re sum_{n>0} neg[n-1] z^{-n}
struct AnnulusFourierDecomposition {
    int max_mode = 0;
    std::vector<std::complex<double>> pos;   // h_n, n = 1..max_mode
    std::vector<std::complex<double>> neg;   // h_{-n}, n = 1..max_mode
    double constant = 0.0;                   // h_0
    double log_coeff = 0.0;                  // C^0
    double eta = 1.0;
    double inner_radius = 0.0;

    std::vector<double> mode_residual;       // rms fit residual, modes 0..max_mode
    std::vector<double> mode_condition;      // fit condition numbers, modes 0..max_mode
    double laplacian_residual = 0.0;         // reported harmonicity defect of input

    /// Exact Dirichlet energies of the three parts over A(eta, delta).
    double energy_plus() const;
    double energy_minus() const;
    double energy_log() const;
    /// Exact Dirichlet energies over a sub-annulus [r0, r1].
    double energy_plus(double r0, double r1) const;
    double energy_minus(double r0, double r1) const;

    /// |grad h^+|^2 resp. |grad h^-|^2 at a point, from the coefficients.
    double grad_sq_plus(double r, double theta) const;
    double grad_sq_minus(double r, double theta) const;
};

/// Least-squares radial fit of every angular mode against a r^n + b r^-n
/// (a + b log r for mode 0) over all rings. max_mode defaults to n_theta/4.
AnnulusFourierDecomposition fourier_split(const grid::LogPolarGrid& g, const Field& f,
                                          int max_mode = -1);

/// Field synthesis from coefficients (round-trip counterpart of fourier_split).
Field synthesize(const grid::LogPolarGrid& g, const AnnulusFourierDecomposition& d);

/// Empirical constant of the interior gradient bound for positive-frequency
/// harmonic parts: sup over nodes with r in [2 delta/eta, eta/2] of
/// |grad h^+|^2 eta^2 / int |grad h^+|^2. Returns 0 for a vanishing part.
double pointwise_bound_ratio_plus(const grid::LogPolarGrid& g,
                                  const AnnulusFourierDecomposition& d);
/// Same with the weight rho^4 eta^2 / delta^2 for the negative part.
double pointwise_bound_ratio_minus(const grid::LogPolarGrid& g,
                                   const AnnulusFourierDecomposition& d);

/// Whitney-type extension of an annulus field to the plane: cutoff to the
/// band mean near each boundary followed by reflection through the circle.
/// The gradient of the extension is supported in B_{2R} \ B_{r/2}.
struct WhitneyExtension {
    grid::LogPolarGrid egrid;     // spans [r/4, 4R]
    Field values;
    double inner_value = 0.0;     // constant value inside B_{r/4}
    double outer_value = 0.0;     // constant value outside B_{4R}
    double r = 0.0, R = 0.0;

    double energy() const;                         // total extension energy
    double energy_band(double a, double b) const;  // gradient energy in a<|x|<b
};

WhitneyExtension whitney_extend(const grid::LogPolarGrid& g, const Field& f);

} // namespace hmlab::harmonic
