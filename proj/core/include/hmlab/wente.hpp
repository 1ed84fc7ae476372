#pragma once

#include <vector>

#include "hmlab/field.hpp"
#include "hmlab/grid.hpp"

namespace hmlab::wente {

/// Discrete Jacobian {a,b} = d1 a d2 b - d2 a d1 b from the grid gradients.
Field jacobian_rhs(const grid::DiskGrid& g, const Field& a, const Field& b);

/// Solve -Delta phi = rhs, phi = 0 on |x| = R, by FFT in theta and
/// conservative tridiagonal radial solves per angular mode. The conservative
/// flux form handles the r = 0 node exactly for every mode.
/// If residual is non-null it receives |Delta phi + rhs|_{L^2} measured with
/// the high-order field Laplacian.
Field solve_dirichlet(const grid::DiskGrid& g, const Field& rhs, double* residual = nullptr);

struct WenteProblem {
    Field a, b, rhs, phi;
    double residual = 0.0;
};
WenteProblem solve(const grid::DiskGrid& g, const Field& a, const Field& b);

/// Weight of the weighted Wente estimate:
/// f(r) = r^2 log^2(1 + 1/r) log(1 + log(1/r)), continued by 0 at r = 0 and
/// clamped to 0 for r >= 1.
double f_weight(double r);

/// Empirical constant int |x|^2 |grad phi|^2 / ( int f(|x|) |grad b|^2 *
/// int |grad a|^2 ). Throws on a degenerate (constant) input pair.
double weighted_wente_ratio(const grid::DiskGrid& g, const Field& a, const Field& b);

/// Iterated cutoff-to-mean decomposition: pieces[k] has gradient supported in
/// A_k u A_{k+1} for k < depth, pieces[depth] is the remainder supported in
/// B_{2^{-depth}}; the gradients sum to grad b exactly.
struct DyadicPieces {
    std::vector<Field> pieces;
    int depth = 0;
};
DyadicPieces dyadic_decompose(const grid::DiskGrid& g, const Field& b, int depth);

/// Ring energies of grad phi on the dyadic annuli A_k = B_{2^-k} \ B_{2^-k-1}
/// and the smallest constant C_alpha for which the one-step Morrey decrease
/// e_{k+1} <= gamma^{k+1} e_0 + C_alpha |grad a|^2 sum_n gamma^{|n-k|} beta_n
/// holds on the resolved rings, with gamma = max(2^-alpha, 2/3).
struct MorreyReport {
    std::vector<double> ring_energy;   // e_k for phi
    std::vector<double> ring_energy_b; // beta_k for b
    double gamma = 0.0;
    double c_alpha = 0.0;
};
MorreyReport morrey_decrease_check(const grid::DiskGrid& g, const Field& a, const Field& b,
                                   double alpha);

/// Gradient energy of a field restricted to a < |x| < b.
double band_energy(const grid::DiskGrid& g, const Field& f, double a, double b);

} // namespace hmlab::wente
