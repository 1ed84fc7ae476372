#include "hmlab/harmonic.hpp"

#include <cmath>
#include <stdexcept>

namespace hmlab::harmonic {

namespace {
constexpr double kPi = 3.14159265358979323846;

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * (3.0 - 2.0 * u);
}

// chi = 1 on [0,1], 0 on [2,inf)
double cutoff(double q) { return 1.0 - smooth_step(q - 1.0); }
} // namespace

double AnnulusFourierDecomposition::energy_plus(double r0, double r1) const {
    double acc = 0.0;
    for (int n = 1; n <= max_mode; ++n) {
        const double h2 = std::norm(pos[n - 1]);
        acc += h2 * n * (std::pow(r1, 2 * n) - std::pow(r0, 2 * n));
    }
    return kPi * acc;
}

double AnnulusFourierDecomposition::energy_minus(double r0, double r1) const {
    double acc = 0.0;
    for (int n = 1; n <= max_mode; ++n) {
        const double h2 = std::norm(neg[n - 1]);
        acc += h2 * n * (std::pow(r0, -2 * n) - std::pow(r1, -2 * n));
    }
    return kPi * acc;
}

double AnnulusFourierDecomposition::energy_plus() const { return energy_plus(inner_radius, eta); }
double AnnulusFourierDecomposition::energy_minus() const { return energy_minus(inner_radius, eta); }
double AnnulusFourierDecomposition::energy_log() const {
    return 2.0 * kPi * log_coeff * log_coeff * std::log(eta / inner_radius);
}

double AnnulusFourierDecomposition::grad_sq_plus(double r, double theta) const {
    // |d/dz sum h_n z^n|^2
    std::complex<double> acc = 0.0;
    const std::complex<double> z = std::polar(r, theta);
    std::complex<double> zp = 1.0;   // z^{n-1}
    for (int n = 1; n <= max_mode; ++n) {
        acc += double(n) * pos[n - 1] * zp;
        zp *= z;
    }
    return std::norm(acc);
}

double AnnulusFourierDecomposition::grad_sq_minus(double r, double theta) const {
    std::complex<double> acc = 0.0;
    const std::complex<double> zinv = std::polar(1.0 / r, -theta);
    std::complex<double> zp = zinv * zinv;   // z^{-n-1}
    for (int n = 1; n <= max_mode; ++n) {
        acc += -double(n) * neg[n - 1] * zp;
        zp *= zinv;
    }
    return std::norm(acc);
}

AnnulusFourierDecomposition fourier_split(const grid::LogPolarGrid& g, const Field& f,
                                          int max_mode) {
    if (g.n_theta() < 4) throw std::invalid_argument("fourier_split: needs an angular grid");
    if (max_mode < 0) max_mode = g.n_theta() / 4;
    if (max_mode > g.n_theta() / 2)
        throw std::invalid_argument("fourier_split: max_mode above Nyquist");

    AnnulusFourierDecomposition d;
    d.max_mode = max_mode;
    d.eta = g.eta();
    d.inner_radius = g.inner_radius();
    d.pos.assign(max_mode, 0.0);
    d.neg.assign(max_mode, 0.0);
    d.mode_residual.assign(max_mode + 1, 0.0);
    d.mode_condition.assign(max_mode + 1, 1.0);

    std::vector<std::complex<double>> spec;
    g.fft()->forward(f, spec);
    const int nm = g.fft()->nmodes();
    const int nr = g.n_s();

    {
        Field lap = g.laplacian_apply(f);
        double num = 0.0;
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < g.n_theta(); ++j)
                num += lap(i, j) * lap(i, j) * g.cell_area(i);
        d.laplacian_residual = std::sqrt(num);
    }

    // mode 0: c0(r) = h0 + C0 log r, real least squares
    {
        double sw = nr, sx = 0, sxx = 0;
        std::complex<double> sy = 0, sxy = 0;
        for (int i = 0; i < nr; ++i) {
            const double x = g.s(i);
            sx += x;
            sxx += x * x;
            sy += spec[size_t(i) * nm + 0];
            sxy += x * spec[size_t(i) * nm + 0];
        }
        const double det = sw * sxx - sx * sx;
        const std::complex<double> c0 = (sxx * sy - sx * sxy) / det;
        const std::complex<double> c1 = (sw * sxy - sx * sy) / det;
        d.constant = c0.real();
        d.log_coeff = c1.real();
        double res = 0.0;
        for (int i = 0; i < nr; ++i)
            res += std::norm(spec[size_t(i) * nm + 0] - (c0 + c1 * g.s(i)));
        d.mode_residual[0] = std::sqrt(res / nr);
        // condition of the scaled [1, s] columns
        const double nx = std::sqrt(sxx), n1 = std::sqrt(sw);
        const double corr = std::fabs(sx) / (nx * n1);
        d.mode_condition[0] = std::sqrt((1 + corr) / std::max(1e-300, 1 - corr));
    }

    for (int n = 1; n <= max_mode; ++n) {
        // scaled columns u = (r/eta)^n, v = (rin/r)^n, both with max 1
        double guu = 0, gvv = 0;
        std::complex<double> cy_u = 0, cy_v = 0;
        double guv = 0;
        for (int i = 0; i < nr; ++i) {
            const double u = std::pow(g.r(i) / g.eta(), n);
            const double v = std::pow(g.inner_radius() / g.r(i), n);
            const std::complex<double> y = spec[size_t(i) * nm + n];
            guu += u * u;
            gvv += v * v;
            guv += u * v;
            cy_u += u * y;
            cy_v += v * y;
        }
        const double det = guu * gvv - guv * guv;
        const double tr = guu + gvv;
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
        const double lmax = 0.5 * (tr + disc), lmin = 0.5 * (tr - disc);
        const double cond = std::sqrt(lmax / std::max(lmin, 1e-300));
        d.mode_condition[n] = cond;
        if (cond > 1e12)
            throw std::runtime_error("fourier_split: mode " + std::to_string(n) +
                                     " fit condition number exceeds 1e12");
        const std::complex<double> alpha_s = (gvv * cy_u - guv * cy_v) / det;
        const std::complex<double> beta_s = (guu * cy_v - guv * cy_u) / det;
        // undo scaling: c_n(r) = alpha r^n + beta r^-n
        const std::complex<double> alpha = alpha_s * std::pow(g.eta(), -n);
        const std::complex<double> beta = beta_s * std::pow(g.inner_radius(), n);
        d.pos[n - 1] = 2.0 * alpha;
        d.neg[n - 1] = 2.0 * std::conj(beta);
        double res = 0.0;
        for (int i = 0; i < nr; ++i) {
            const std::complex<double> fit = alpha * std::pow(g.r(i), n) + beta * std::pow(g.r(i), -n);
            res += std::norm(spec[size_t(i) * nm + n] - fit);
        }
        d.mode_residual[n] = std::sqrt(res / nr);
    }
    return d;
}

Field synthesize(const grid::LogPolarGrid& g, const AnnulusFourierDecomposition& d) {
    Field out(g.n_s(), g.n_theta());
    for (int i = 0; i < g.n_s(); ++i) {
        for (int j = 0; j < g.n_theta(); ++j) {
            const std::complex<double> z = std::polar(g.r(i), g.theta(j));
            std::complex<double> acc = 0.0;
            std::complex<double> zp = z, zm = 1.0 / z;
            for (int n = 1; n <= d.max_mode; ++n) {
                acc += d.pos[n - 1] * zp + d.neg[n - 1] * zm;
                zp *= z;
                zm /= z;
            }
            out(i, j) = d.constant + d.log_coeff * std::log(g.r(i)) + acc.real();
        }
    }
    return out;
}

namespace {
double sup_ratio(const grid::LogPolarGrid& g, const AnnulusFourierDecomposition& d, bool plus) {
    const double energy = plus ? d.energy_plus() : d.energy_minus();
    if (energy <= 0.0) return 0.0;   // degenerate input: 0/0 -> 0 by convention
    const double lo = 2.0 * g.inner_radius(), hi = 0.5 * g.eta();
    const double delta = g.eta() * g.inner_radius();
    bool any = false;
    double sup = 0.0;
    for (int i = 0; i < g.n_s(); ++i) {
        const double r = g.r(i);
        if (r < lo || r > hi) continue;
        any = true;
        for (int j = 0; j < g.n_theta(); ++j) {
            double val;
            if (plus) {
                val = d.grad_sq_plus(r, g.theta(j)) * g.eta() * g.eta();
            } else {
                const double w = std::pow(r, 4) * g.eta() * g.eta() / (delta * delta);
                val = d.grad_sq_minus(r, g.theta(j)) * w;
            }
            sup = std::max(sup, val);
        }
    }
    if (!any)
        throw std::runtime_error("pointwise_bound_ratio: annulus too thin, no nodes in [2delta/eta, eta/2]");
    return sup / energy;
}
} // namespace

double pointwise_bound_ratio_plus(const grid::LogPolarGrid& g,
                                  const AnnulusFourierDecomposition& d) {
    return sup_ratio(g, d, true);
}

double pointwise_bound_ratio_minus(const grid::LogPolarGrid& g,
                                   const AnnulusFourierDecomposition& d) {
    return sup_ratio(g, d, false);
}

double WhitneyExtension::energy() const {
    Gradient grad = egrid.gradient(values);
    Field e(values.nr, values.nth);
    for (size_t k = 0; k < e.v.size(); ++k)
        e.v[k] = grad.gr.v[k] * grad.gr.v[k] + grad.gt.v[k] * grad.gt.v[k];
    return egrid.integrate(e);
}

double WhitneyExtension::energy_band(double a, double b) const {
    Gradient grad = egrid.gradient(values);
    double acc = 0.0;
    for (int i = 0; i < egrid.n_s(); ++i) {
        if (egrid.r(i) < a || egrid.r(i) > b) continue;
        for (int j = 0; j < egrid.n_theta(); ++j) {
            const double g2 = grad.gr(i, j) * grad.gr(i, j) + grad.gt(i, j) * grad.gt(i, j);
            acc += g2 * egrid.cell_area(i);
        }
    }
    return acc;
}

WhitneyExtension whitney_extend(const grid::LogPolarGrid& g, const Field& f) {
    const double r = g.inner_radius(), R = g.eta();
    if (!(R > 2.0 * r))
        throw std::invalid_argument("whitney_extend: requires R > 2r");

    // band means
    double mr = 0.0, ar = 0.0, mR = 0.0, aR = 0.0;
    for (int i = 0; i < g.n_s(); ++i) {
        const double rad = g.r(i);
        for (int j = 0; j < g.n_theta(); ++j) {
            if (rad >= r && rad <= 2.0 * r) {
                mr += f(i, j) * g.cell_area(i);
                ar += g.cell_area(i);
            }
            if (rad >= 0.5 * R && rad <= R) {
                mR += f(i, j) * g.cell_area(i);
                aR += g.cell_area(i);
            }
        }
    }
    mr /= ar;
    mR /= aR;

    auto a_at = [&](double rad, double th) { return g.interpolate(f, rad, th); };
    auto value = [&](double rad, double th) -> double {
        if (rad >= r && rad <= R) return a_at(rad, th);
        if (rad < r) {
            const double t = r * r / rad;           // reflected radius in [r, inf)
            const double c = cutoff(t / r);          // 1 on t<=r, 0 on t>=2r
            if (c <= 0.0) return mr;
            return c * a_at(t, th) + (1.0 - c) * mr;
        }
        const double t = R * R / rad;               // reflected radius in (0, R]
        const double c = cutoff(2.0 * t / R);        // 1 on t<=R/2, 0 on t>=R
        if (c >= 1.0) return mR;
        return (1.0 - c) * a_at(t, th) + c * mR;
    };

    const double lo = r / 4.0, hi = 4.0 * R;
    const int n_s = std::max(32, int(std::ceil(g.n_s() * std::log(hi / lo) / g.modulus())));
    grid::LogPolarGrid egrid(hi, hi * lo, n_s, g.n_theta());
    WhitneyExtension ext{std::move(egrid), Field(), mr, mR, r, R};
    ext.values = Field(ext.egrid.n_s(), ext.egrid.n_theta());
    for (int i = 0; i < ext.egrid.n_s(); ++i)
        for (int j = 0; j < ext.egrid.n_theta(); ++j)
            ext.values(i, j) = value(ext.egrid.r(i), ext.egrid.theta(j));
    return ext;
}

} // namespace hmlab::harmonic
