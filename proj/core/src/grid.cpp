#include "hmlab/grid.hpp"

#include <cmath>

namespace hmlab::grid {

namespace {
constexpr double kTwoPi = 6.283185307179586476925;
}

LogPolarGrid::LogPolarGrid(double eta, double delta, int n_s, int n_theta)
    : eta_(eta), delta_(delta), n_s_(n_s), n_theta_(n_theta) {
    if (!(eta > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("LogPolarGrid: eta and delta must be positive");
    if (!(delta < eta * eta))
        throw std::invalid_argument("LogPolarGrid: requires delta < eta^2 (nonempty annulus)");
    if (n_s < 4) throw std::invalid_argument("LogPolarGrid: n_s must be at least 4");
    if (n_theta != 1 && n_theta < 4)
        throw std::invalid_argument("LogPolarGrid: n_theta must be 1 (axisymmetric) or >= 4");

    inner_radius_ = delta / eta;
    const double s0 = std::log(inner_radius_), s1 = std::log(eta);
    ds_ = (s1 - s0) / (n_s - 1);
    dtheta_ = kTwoPi / n_theta;
    s_.resize(n_s);
    r_.resize(n_s);
    area_.resize(n_s);
    for (int i = 0; i < n_s; ++i) {
        s_[i] = s0 + i * ds_;
        r_[i] = std::exp(s_[i]);
    }
    for (int i = 0; i < n_s; ++i) {
        const double lo = std::max(s0, s_[i] - 0.5 * ds_);
        const double hi = std::min(s1, s_[i] + 0.5 * ds_);
        area_[i] = 0.5 * (std::exp(2.0 * hi) - std::exp(2.0 * lo)) * dtheta_;
    }
    d1_ = uniform_stencils(n_s_, ds_, 1, 6);
    d2_ = uniform_stencils(n_s_, ds_, 2, 6);
    if (n_theta_ > 1) fft_ = std::make_shared<RingFFT>(n_theta_);
}

Field LogPolarGrid::sample(const std::function<double(double, double)>& f) const {
    Field out(n_s_, n_theta_);
    for (int i = 0; i < n_s_; ++i)
        for (int j = 0; j < n_theta_; ++j) out(i, j) = f(r_[i], theta(j));
    return out;
}

double LogPolarGrid::integrate(const Field& f) const {
    if (f.nr != n_s_ || f.nth != n_theta_)
        throw std::invalid_argument("integrate: field shape does not match grid");
    double acc = 0.0;
    for (int i = 0; i < n_s_; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_theta_; ++j) row += f(i, j);
        acc += row * area_[i];
    }
    return acc;
}

Gradient LogPolarGrid::gradient(const Field& f) const {
    if (f.nr != n_s_ || f.nth != n_theta_)
        throw std::invalid_argument("gradient: field shape does not match grid");
    Gradient g;
    g.gr = Field(n_s_, n_theta_);
    g.gt = Field(n_s_, n_theta_);
    // d/ds along columns, then scale by 1/r
    for (int j = 0; j < n_theta_; ++j)
        d1_.apply(&f.v[j], &g.gr.v[j], n_theta_, n_theta_);
    for (int i = 0; i < n_s_; ++i)
        for (int j = 0; j < n_theta_; ++j) g.gr(i, j) /= r_[i];
    if (n_theta_ > 1) {
        Field dth;
        fft_->theta_derivative(f, dth);
        for (int i = 0; i < n_s_; ++i)
            for (int j = 0; j < n_theta_; ++j) g.gt(i, j) = dth(i, j) / r_[i];
    }
    return g;
}

Field LogPolarGrid::laplacian_apply(const Field& f) const {
    if (f.nr != n_s_ || f.nth != n_theta_)
        throw std::invalid_argument("laplacian_apply: field shape does not match grid");
    Field out(n_s_, n_theta_);
    for (int j = 0; j < n_theta_; ++j)
        d2_.apply(&f.v[j], &out.v[j], n_theta_, n_theta_);
    if (n_theta_ > 1) {
        Field dtt;
        fft_->theta_second_derivative(f, dtt);
        out += dtt;
    }
    for (int i = 0; i < n_s_; ++i) {
        const double w = std::exp(-2.0 * s_[i]);
        for (int j = 0; j < n_theta_; ++j) out(i, j) *= w;
    }
    return out;
}

double LogPolarGrid::interpolate(const Field& f, double r, double theta) const {
    double s = std::log(std::max(r, 1e-300));
    s = std::max(s_.front(), std::min(s_.back(), s));
    double si = (s - s_.front()) / ds_;
    int i = std::min(int(si), n_s_ - 2);
    double u = si - i;
    double tj = theta / dtheta_;
    tj -= std::floor(tj / n_theta_) * n_theta_;
    int j = int(tj) % n_theta_;
    double v = tj - std::floor(tj);
    if (v < 0) v += 1.0;
    const int jp = (j + 1) % n_theta_;
    return (1 - u) * ((1 - v) * f(i, j) + v * f(i, jp)) +
           u * ((1 - v) * f(i + 1, j) + v * f(i + 1, jp));
}

DiskGrid::DiskGrid(double radius, int n_r, int n_theta)
    : radius_(radius), n_r_(n_r), n_theta_(n_theta) {
    if (!(radius > 0.0)) throw std::invalid_argument("DiskGrid: radius must be positive");
    if (n_r < 4) throw std::invalid_argument("DiskGrid: n_r must be at least 4");
    if (n_theta < 4 || n_theta % 2 != 0)
        throw std::invalid_argument("DiskGrid: n_theta must be even and >= 4");
    h_ = radius / n_r;
    dtheta_ = kTwoPi / n_theta;
    area_.resize(n_r_ + 1);
    for (int i = 0; i <= n_r_; ++i) {
        const double lo = std::max(0.0, r(i) - 0.5 * h_);
        const double hi = std::min(radius_, r(i) + 0.5 * h_);
        area_[i] = 0.5 * (hi * hi - lo * lo) * dtheta_;
    }
    d1_ = uniform_stencils(n_r_ + 1, h_, 1, 4);
    d2_ = uniform_stencils(n_r_ + 1, h_, 2, 4);
    fft_ = std::make_shared<RingFFT>(n_theta_);
}

Field DiskGrid::sample(const std::function<double(double, double)>& f) const {
    Field out(n_rings(), n_theta_);
    for (int i = 0; i <= n_r_; ++i)
        for (int j = 0; j < n_theta_; ++j) out(i, j) = f(r(i), theta(j));
    // enforce a single center value
    double c = 0.0;
    for (int j = 0; j < n_theta_; ++j) c += out(0, j);
    c /= n_theta_;
    for (int j = 0; j < n_theta_; ++j) out(0, j) = c;
    return out;
}

double DiskGrid::integrate(const Field& f) const {
    if (f.nr != n_rings() || f.nth != n_theta_)
        throw std::invalid_argument("integrate: field shape does not match grid");
    double acc = 0.0;
    for (int i = 0; i <= n_r_; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_theta_; ++j) row += f(i, j);
        acc += row * area_[i];
    }
    return acc;
}

Gradient DiskGrid::gradient(const Field& f) const {
    if (f.nr != n_rings() || f.nth != n_theta_)
        throw std::invalid_argument("gradient: field shape does not match grid");
    Gradient g;
    g.gr = Field(n_rings(), n_theta_);
    g.gt = Field(n_rings(), n_theta_);
    for (int j = 0; j < n_theta_; ++j)
        d1_.apply(&f.v[j], &g.gr.v[j], n_theta_, n_theta_);
    Field dth;
    fft_->theta_derivative(f, dth);
    for (int i = 1; i <= n_r_; ++i)
        for (int j = 0; j < n_theta_; ++j) g.gt(i, j) = dth(i, j) / r(i);
    // center: first angular Fourier mode of ring 1 gives the Cartesian gradient
    double gx = 0.0, gy = 0.0;
    for (int j = 0; j < n_theta_; ++j) {
        gx += f(1, j) * std::cos(theta(j));
        gy += f(1, j) * std::sin(theta(j));
    }
    gx *= 2.0 / (n_theta_ * h_);
    gy *= 2.0 / (n_theta_ * h_);
    for (int j = 0; j < n_theta_; ++j) {
        const double c = std::cos(theta(j)), s = std::sin(theta(j));
        g.gr(0, j) = gx * c + gy * s;
        g.gt(0, j) = -gx * s + gy * c;
    }
    return g;
}

Field DiskGrid::laplacian_apply(const Field& f) const {
    if (f.nr != n_rings() || f.nth != n_theta_)
        throw std::invalid_argument("laplacian_apply: field shape does not match grid");
    Field out(n_rings(), n_theta_);
    Field d1(n_rings(), n_theta_), d2(n_rings(), n_theta_);
    for (int j = 0; j < n_theta_; ++j) {
        d1_.apply(&f.v[j], &d1.v[j], n_theta_, n_theta_);
        d2_.apply(&f.v[j], &d2.v[j], n_theta_, n_theta_);
    }
    Field dtt;
    fft_->theta_second_derivative(f, dtt);
    for (int i = 1; i <= n_r_; ++i)
        for (int j = 0; j < n_theta_; ++j)
            out(i, j) = d2(i, j) + d1(i, j) / r(i) + dtt(i, j) / (r(i) * r(i));
    double mean1 = 0.0;
    for (int j = 0; j < n_theta_; ++j) mean1 += f(1, j);
    mean1 /= n_theta_;
    const double c = 4.0 * (mean1 - f(0, 0)) / (h_ * h_);
    for (int j = 0; j < n_theta_; ++j) out(0, j) = c;
    return out;
}

void DiskGrid::to_cartesian(const Gradient& g, Field& gx, Field& gy) const {
    gx = Field(n_rings(), n_theta_);
    gy = Field(n_rings(), n_theta_);
    for (int i = 0; i <= n_r_; ++i)
        for (int j = 0; j < n_theta_; ++j) {
            const double c = std::cos(theta(j)), s = std::sin(theta(j));
            gx(i, j) = g.gr(i, j) * c - g.gt(i, j) * s;
            gy(i, j) = g.gr(i, j) * s + g.gt(i, j) * c;
        }
}

} // namespace hmlab::grid
