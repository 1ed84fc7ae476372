#include "hmlab/sphere_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hmlab::sphere {

namespace {
constexpr double kRIn = 0.8;
constexpr double kROut = 1.25;

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * (3.0 - 2.0 * u);
}
} // namespace

Vec3 chart_point(Cplx z, int chart) {
    const double x = z.real(), y = z.imag();
    const double s = 1.0 + x * x + y * y;
    if (chart == 0) return {2 * x / s, 2 * y / s, (1.0 - x * x - y * y) / s};
    return {2 * x / s, -2 * y / s, (x * x + y * y - 1.0) / s};
}

double conformal_factor(Cplx z) {
    const double t = 1.0 + std::norm(z);
    return 4.0 / (t * t);
}

Cplx chart_coord(const Vec3& p, int chart) {
    if (chart == 0) {
        const double d = 1.0 + p[2];
        return {p[0] / d, p[1] / d};
    }
    const double d = 1.0 - p[2];
    return {p[0] / d, -p[1] / d};
}

TwoChartSphereGrid::TwoChartSphereGrid(int n, double extent) : n_(n), extent_(extent) {
    if (n < 16) throw std::invalid_argument("TwoChartSphereGrid: n must be at least 16");
    if (extent <= kROut) throw std::invalid_argument("TwoChartSphereGrid: extent must exceed 1.25");
    x_.resize(n);
    h_ = 2.0 * extent / (n - 1);
    for (int k = 0; k < n; ++k) x_[k] = -extent + k * h_;
}

double TwoChartSphereGrid::pou(double r) {
    if (r <= kRIn) return 1.0;
    if (r >= kROut) return 0.0;
    // log-symmetric profile so chi(r) + chi(1/r) = 1 on the band
    const double u = (std::log(r) - std::log(kRIn)) / (std::log(kROut) - std::log(kRIn));
    return 1.0 - smooth_step(u);
}

std::array<Field, 2> TwoChartSphereGrid::sample(const std::function<double(const Vec3&)>& f) const {
    std::array<Field, 2> out{Field(n_, n_), Field(n_, n_)};
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                out[c](i, j) = f(chart_point(node(i, j), c));
    return out;
}

double TwoChartSphereGrid::integrate(const std::array<Field, 2>& f) const {
    double acc = 0.0;
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const Cplx z = node(i, j);
                const double w = pou(std::abs(z));
                if (w <= 0.0) continue;
                acc += w * conformal_factor(z) * f[c](i, j) * h_ * h_;
            }
    return acc;
}

double TwoChartSphereGrid::integrate_chart_density(const std::array<Field, 2>& f) const {
    double acc = 0.0;
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const double w = pou(std::abs(node(i, j)));
                if (w <= 0.0) continue;
                acc += w * f[c](i, j) * h_ * h_;
            }
    return acc;
}

void TwoChartSphereGrid::transfer(const Field& from, int /*to*/, Field& out) const {
    out = Field(n_, n_);
    auto lag_w = [](double t, std::array<double, 4>& w) {
        // Lagrange cubic on nodes {-1,0,1,2} at fractional t in [0,1]
        w[0] = -t * (t - 1) * (t - 2) / 6.0;
        w[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
        w[2] = -(t + 1) * t * (t - 2) / 2.0;
        w[3] = (t + 1) * t * (t - 1) / 6.0;
    };
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const Cplx z = node(i, j);
            if (std::abs(z) < 1e-12) continue;   // image at infinity
            const Cplx zi = 1.0 / z;
            const double fx = (zi.real() - x_[0]) / h_;
            const double fy = (zi.imag() - x_[0]) / h_;
            int ix = int(std::floor(fx)), iy = int(std::floor(fy));
            if (ix < 1 || iy < 1 || ix > n_ - 3 || iy > n_ - 3) continue;
            std::array<double, 4> wx, wy;
            lag_w(fx - ix, wx);
            lag_w(fy - iy, wy);
            double acc = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) acc += wx[a] * wy[b] * from(ix - 1 + a, iy - 1 + b);
            out(i, j) = acc;
        }
}

void TwoChartSphereGrid::gradient(const Field& f, Field& gx, Field& gy) const {
    gx = Field(n_, n_);
    gy = Field(n_, n_);
    auto d = [&](int k) { return std::max(1, std::min(k, n_ - 2)); };
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const int ic = d(i), jc = d(j);
            gx(i, j) = (f(ic + 1, j) - f(ic - 1, j)) / (2 * h_);
            gy(i, j) = (f(i, jc + 1) - f(i, jc - 1)) / (2 * h_);
        }
}

} // namespace hmlab::sphere
