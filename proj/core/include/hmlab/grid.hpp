#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "hmlab/fdweights.hpp"
#include "hmlab/field.hpp"
#include "hmlab/fft.hpp"

namespace hmlab::grid {

/// Annulus A(eta, delta) = B_eta \ B_{delta/eta}, discretized uniformly in
/// s = log r and theta. Radial differentiation uses 4th-order stencils so
/// that harmonicity residuals of smooth fields stay near round-off at the
/// resolutions used here; angular differentiation is spectral.
class LogPolarGrid {
public:
    LogPolarGrid(double eta, double delta, int n_s, int n_theta);

    double eta() const { return eta_; }
    double delta() const { return delta_; }
    double inner_radius() const { return inner_radius_; }
    double modulus() const { return s_.back() - s_.front(); }   // log(eta^2/delta)
    int n_s() const { return n_s_; }
    int n_theta() const { return n_theta_; }
    double ds() const { return ds_; }
    double dtheta() const { return dtheta_; }
    double s(int i) const { return s_[i]; }
    double r(int i) const { return r_[i]; }
    double theta(int j) const { return dtheta_ * j; }
    /// Quadrature weight of node (i, j); depends on i only.
    double cell_area(int i) const { return area_[i]; }

    const RingFFT* fft() const { return fft_.get(); }

    Field sample(const std::function<double(double r, double theta)>& f) const;
    double integrate(const Field& f) const;
    Gradient gradient(const Field& f) const;
    Field laplacian_apply(const Field& f) const;

    /// Bilinear interpolation in (s, theta); clamps s to the grid range.
    double interpolate(const Field& f, double r, double theta) const;

private:
    double eta_, delta_, inner_radius_;
    int n_s_, n_theta_;
    double ds_, dtheta_;
    std::vector<double> s_, r_, area_;
    StencilSet d1_, d2_;
    std::shared_ptr<RingFFT> fft_;
};

/// Disk B_R(0) on a polar grid with rings r_i = i h including the center
/// (ring 0, one physical point stored once per angular slot) and the
/// boundary ring r = R.
class DiskGrid {
public:
    DiskGrid(double radius, int n_r, int n_theta);

    double radius() const { return radius_; }
    int n_r() const { return n_r_; }           // rings: 0..n_r  (n_r+1 total)
    int n_rings() const { return n_r_ + 1; }
    int n_theta() const { return n_theta_; }
    double h() const { return h_; }
    double dtheta() const { return dtheta_; }
    double r(int i) const { return h_ * i; }
    double theta(int j) const { return dtheta_ * j; }
    double cell_area(int i) const { return area_[i]; }
    bool is_boundary(int i) const { return i == n_r_; }

    const RingFFT* fft() const { return fft_.get(); }

    Field sample(const std::function<double(double r, double theta)>& f) const;
    double integrate(const Field& f) const;
    Gradient gradient(const Field& f) const;
    Field laplacian_apply(const Field& f) const;

    /// Cartesian gradient components from the polar-frame pair.
    void to_cartesian(const Gradient& g, Field& gx, Field& gy) const;

private:
    double radius_;
    int n_r_, n_theta_;
    double h_, dtheta_;
    std::vector<double> area_;
    StencilSet d1_, d2_;
    std::shared_ptr<RingFFT> fft_;
};

} // namespace hmlab::grid
