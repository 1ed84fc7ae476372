#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "hmlab/field.hpp"

namespace hmlab::sphere {

using Vec3 = std::array<double, 3>;
using Cplx = std::complex<double>;

/// Chart conventions for the unit sphere, used by every sphere-domain object:
/// chart 0 has coordinate z (z = 0 at the north pole), chart 1 has w = 1/z
/// (w = 0 at the south pole). Both transitions are the holomorphic inversion.
Vec3 chart_point(Cplx z, int chart);
/// Conformal factor of the round metric in either chart: 4 / (1+|z|^2)^2.
double conformal_factor(Cplx z);
/// Coordinate of a sphere point in the given chart (undefined at the
/// opposite pole).
Cplx chart_coord(const Vec3& p, int chart);

/// Two stereographic chart grids covering the sphere with a partition of
/// unity supported on 0.8 <= |z| <= 1.25. Fields live as one Field per chart
/// (Cartesian nodes, index i along x, j along y, ring-major reuse of Field
/// with nr = nth = n). Quadrature splits integrals as sum_c int chi_c ...,
/// which makes area and energy integrals chart-symmetric.
class TwoChartSphereGrid {
public:
    TwoChartSphereGrid(int n, double extent = 1.30);

    int n() const { return n_; }
    double h() const { return h_; }
    double coord(int k) const { return x_[k]; }
    Cplx node(int i, int j) const { return {x_[i], x_[j]}; }

    /// Partition-of-unity weight as a function of |z| (chi + chi(1/|z|) = 1).
    static double pou(double r);

    /// Per-chart field sampled from a function of the sphere point.
    std::array<Field, 2> sample(const std::function<double(const Vec3&)>& f) const;

    /// integral over S^2 of f dvol, f given per chart against dvol.
    double integrate(const std::array<Field, 2>& f) const;
    /// integral over S^2 of f(z) dz^2 (chart measure), f given per chart.
    double integrate_chart_density(const std::array<Field, 2>& f) const;

    /// Chart-to-chart transfer: fill nodes of chart `to` from the other
    /// chart's field by 4x4 Lagrange-cubic interpolation at the transition
    /// image. Nodes whose image falls outside the source grid are left.
    void transfer(const Field& from, int to, Field& out) const;

    /// Flat centered gradient (d/dx, d/dy) of a per-chart field.
    void gradient(const Field& f, Field& gx, Field& gy) const;

private:
    int n_;
    double extent_, h_;
    std::vector<double> x_;
};

} // namespace hmlab::sphere
