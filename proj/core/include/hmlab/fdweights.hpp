#pragma once

#include <vector>

namespace hmlab {

/// Finite-difference weights for the m-th derivative at x0 from the nodes xs
/// (Fornberg's recurrence). Returns one weight per node.
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m);

/// Dense banded differentiation matrix rows for a uniform 1-D grid of n nodes
/// with spacing h: row i holds `width` weights applied at offset `start[i]`.
/// Interior rows use centered stencils, rows near the ends use shifted
/// one-sided stencils of the same order.
struct StencilSet {
    int n = 0;
    int width = 0;
    std::vector<int> start;       // first node index per row
    std::vector<double> w;        // row-major weights, n x width

    void apply(const double* in, double* out, int stride_in = 1, int stride_out = 1) const;
};

/// Uniform-grid differentiation of order `deriv` (1 or 2) with `order`-th
/// order accuracy (stencil width = order + deriv rounded to fit).
StencilSet uniform_stencils(int n, double h, int deriv, int order);

} // namespace hmlab
