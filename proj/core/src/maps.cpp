#include "hmlab/maps.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace hmlab::maps {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double smooth_step(double u, int order) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (order == 7) {
        const double u2 = u * u;
        return u2 * u2 * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u)));
    }
    if (order == 5) return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    return u * u * (3.0 - 2.0 * u);
}
double smooth_step_d(double u, int order) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double v = 1.0 - u;
    if (order == 7) return 140.0 * u * u * u * v * v * v;
    if (order == 5) return 30.0 * u * u * v * v;
    return 6.0 * u * v;
}

struct CJet {
    Cplx v = 0.0, dz = 0.0, dzb = 0.0;
};

CJet operator+(const CJet& a, const CJet& b) { return {a.v + b.v, a.dz + b.dz, a.dzb + b.dzb}; }
CJet operator-(const CJet& a, const CJet& b) { return {a.v - b.v, a.dz - b.dz, a.dzb - b.dzb}; }
CJet operator*(const CJet& a, const CJet& b) {
    return {a.v * b.v, a.dz * b.v + a.v * b.dz, a.dzb * b.v + a.v * b.dzb};
}
CJet inverse(const CJet& a) {
    const Cplx iv = 1.0 / a.v;
    return {iv, -a.dz * iv * iv, -a.dzb * iv * iv};
}

/// polynomial jet wrt a holomorphic argument jet
CJet poly_eval(const std::vector<Cplx>& c, const CJet& z) {
    Cplx v = 0.0, d = 0.0;
    for (int k = int(c.size()) - 1; k >= 0; --k) {
        d = d * z.v + v;
        v = v * z.v + c[k];
    }
    return {v, d * z.dz, d * z.dzb};
}

/// sigma(zeta) = (2 zr, 2 zi, |z|^2-1)/(1+|z|^2): target chart with 0 -> south.
/// sigma_hat(xi) = sigma(1/xi) = (2 xr, -2 xi, 1-|x|^2)/(1+|x|^2): 0 -> north.
MapJet through_chart(const CJet& zeta, bool hat) {
    MapJet out;
    const double xr = zeta.v.real(), xi = zeta.v.imag();
    const double t = 1.0 + xr * xr + xi * xi;
    const double sy = hat ? -1.0 : 1.0;
    out.u = {2 * xr / t, sy * 2 * xi / t, sy * (xr * xr + xi * xi - 1.0) / t};
    // d sigma / d(xr, xi)
    double S[3][2];
    S[0][0] = (2 * t - 4 * xr * xr) / (t * t);
    S[0][1] = -4 * xr * xi / (t * t);
    S[1][0] = sy * (-4 * xr * xi) / (t * t);
    S[1][1] = sy * (2 * t - 4 * xi * xi) / (t * t);
    S[2][0] = sy * 4 * xr / (t * t);
    S[2][1] = sy * 4 * xi / (t * t);
    // d(xr, xi)/d(x, y) from Wirtinger derivatives
    const Cplx dx = zeta.dz + zeta.dzb;
    const Cplx dy = Cplx(0, 1) * (zeta.dz - zeta.dzb);
    const double X[2][2] = {{dx.real(), dy.real()}, {dx.imag(), dy.imag()}};
    for (int k = 0; k < 3; ++k)
        for (int c = 0; c < 2; ++c) out.du[k][c] = S[k][0] * X[0][c] + S[k][1] * X[1][c];
    return out;
}

/// Map jets through a ratio num/den with a magnitude-based chart swap.
MapJet through_ratio(const CJet& num, const CJet& den) {
    if (std::abs(num.v) <= std::abs(den.v)) return through_chart(num * inverse(den), false);
    return through_chart(den * inverse(num), true);
}

/// Pull a chart-0 jet back to chart 1 coordinates (z = 1/w).
MapJet to_chart1(const MapJet& j, Cplx w) {
    const Cplx dzdw = -1.0 / (w * w);
    const double a = dzdw.real(), b = dzdw.imag();
    // z = 1/w holomorphic: (x,y)_z = J (x,y)_w with J = [[a,-b],[b,a]]
    MapJet out;
    out.u = j.u;
    for (int k = 0; k < 3; ++k) {
        out.du[k][0] = j.du[k][0] * a + j.du[k][1] * b;
        out.du[k][1] = -j.du[k][0] * b + j.du[k][1] * a;
    }
    return out;
}

} // namespace

int RationalMapSpec::degree() const {
    auto deg = [](const std::vector<Cplx>& c) {
        for (int k = int(c.size()) - 1; k >= 0; --k)
            if (std::abs(c[k]) > 0) return k;
        return -1;
    };
    return std::max(deg(p), deg(q));
}

void RationalMapSpec::validate() const {
    auto deg = [](const std::vector<Cplx>& c) {
        for (int k = int(c.size()) - 1; k >= 0; --k)
            if (std::abs(c[k]) > 0) return k;
        return -1;
    };
    const int dp = deg(p), dq = deg(q);
    if (dp < 0 && dq < 0) throw std::invalid_argument("RationalMapSpec: zero map");
    if (dp < 1 && dq < 1) return;   // constant map, nothing to check
    const int n = dp + dq;
    if (dp < 0 || dq < 0) return;   // pure polynomial / pure pole: no common roots
    if (n == 0) return;
    Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < dq; ++i)
        for (int k = 0; k <= dp; ++k) syl(i, i + k) = p[dp - k];
    for (int i = 0; i < dp; ++i)
        for (int k = 0; k <= dq; ++k) syl(dq + i, i + k) = q[dq - k];
    double scale = 0.0;
    for (const auto& c : p) scale = std::max(scale, std::abs(c));
    for (const auto& c : q) scale = std::max(scale, std::abs(c));
    const double res = std::abs(syl.determinant());
    if (res < 1e-10 * std::pow(scale, n))
        throw std::invalid_argument("RationalMapSpec: numerator and denominator share a root");
}

bool ConstantMap::target_chart_jet(Cplx, int, Cplx& xi, Cplx& xi_z, Cplx& xi_zb) const {
    if (p_[2] < 0.0) return false;
    const Vec3& p = p_;
    const double d = 1.0 + p[2];
    xi = Cplx(p[0] / d, -p[1] / d);   // sigma_hat coordinate of the value
    xi_z = xi_zb = 0.0;
    return true;
}

RationalSphereMap::RationalSphereMap(RationalMapSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
}

MapJet RationalSphereMap::eval(Cplx z, int chart) const {
    if (chart == 0) {
        CJet zj{z, 1.0, 0.0};
        return through_ratio(poly_eval(spec_.p, zj), poly_eval(spec_.q, zj));
    }
    // chart-1 coordinate w; evaluate reversed polynomials to stay finite at w=0
    auto deg = [](const std::vector<Cplx>& c) {
        for (int k = int(c.size()) - 1; k >= 0; --k)
            if (std::abs(c[k]) > 0) return k;
        return 0;
    };
    const int dp = deg(spec_.p), dq = deg(spec_.q), d = std::max(dp, dq);
    std::vector<Cplx> pr(d + 1, 0.0), qr(d + 1, 0.0);
    for (int k = 0; k <= dp; ++k) pr[d - k] = spec_.p[k];
    for (int k = 0; k <= dq; ++k) qr[d - k] = spec_.q[k];
    CJet wj{z, 1.0, 0.0};
    return through_ratio(poly_eval(pr, wj), poly_eval(qr, wj));
}

bool RationalSphereMap::target_chart_jet(Cplx z, int chart, Cplx& xi, Cplx& xi_z,
                                         Cplx& xi_zb) const {
    if (chart != 0) return false;
    CJet zj{z, 1.0, 0.0};
    const CJet num = poly_eval(spec_.p, zj), den = poly_eval(spec_.q, zj);
    if (std::abs(den.v) > 2.0 * std::abs(num.v)) return false;  // value far from north
    const CJet x = den * inverse(num);
    xi = x.v;
    xi_z = x.dz;
    xi_zb = x.dzb;
    return true;
}

GluedBubbleMap::GluedBubbleMap(std::shared_ptr<const SphereMapBase> background,
                               RationalMapSpec bubble, double eta, double delta,
                               GluingProfile profile)
    : background_(std::move(background)),
      bubble_(std::move(bubble)),
      eta_(eta),
      delta_(delta),
      profile_(profile) {
    if (!(delta > 0.0) || !(delta <= eta * eta))
        throw std::invalid_argument("GluedBubbleMap: requires 0 < delta <= eta^2");
    if (!(profile_.width > 0.0 && profile_.width <= 1.0))
        throw std::invalid_argument("GluedBubbleMap: profile width must be in (0,1]");
    if (profile_.order != 3 && profile_.order != 5 && profile_.order != 7)
        throw std::invalid_argument("GluedBubbleMap: profile order must be 3, 5 or 7");
    s_in_ = std::log(delta_ / eta_);
    s_out_ = std::log(eta_);
    // reject gluings across (nearly) antipodal boundary values up front
    Cplx xi, xiz, xizb;
    if (!background_->target_chart_jet(Cplx(eta_, 0.0), 0, xi, xiz, xizb) || std::abs(xi) > 2.0)
        throw std::invalid_argument(
            "GluedBubbleMap: background at the gluing circle is not in the bubble's target chart "
            "(antipodal or near-antipodal boundary values)");
}

MapJet GluedBubbleMap::eval(Cplx z, int chart) const {
    if (chart == 1) {
        if (std::abs(z) < 1e-14) return background_->eval(z, 1);
        return to_chart1(eval(1.0 / z, 0), z);
    }
    const double rho = std::abs(z);
    if (rho >= eta_) return background_->eval(z, 0);
    if (rho <= delta_ / eta_) {
        CJet y{z / delta_, 1.0 / delta_, 0.0};
        return through_ratio(poly_eval(bubble_.spec().p, y), poly_eval(bubble_.spec().q, y));
    }
    // neck: blend target-chart coordinates
    const double s = std::log(rho);
    const double L = s_out_ - s_in_;
    const double t = (s - s_in_) / (L * profile_.width);
    const double B = 1.0 - smooth_step(t, profile_.order);
    const double Bp = -smooth_step_d(t, profile_.order) / (L * profile_.width);   // dB/ds
    CJet Bj{B, Bp / (2.0 * z), Bp / (2.0 * std::conj(z))};

    CJet y{z / delta_, 1.0 / delta_, 0.0};
    const CJet num = poly_eval(bubble_.spec().p, y), den = poly_eval(bubble_.spec().q, y);
    if (std::abs(num.v) < 0.3 * std::abs(den.v))
        throw std::runtime_error("GluedBubbleMap: bubble leaves the gluing chart in the neck");
    const CJet xiv = den * inverse(num);

    Cplx xu, xuz, xuzb;
    if (!background_->target_chart_jet(z, 0, xu, xuz, xuzb))
        throw std::runtime_error("GluedBubbleMap: background leaves the gluing chart in the neck");
    const CJet xiu{xu, xuz, xuzb};

    const CJet one{1.0, 0.0, 0.0};
    const CJet xi = Bj * xiv + (one - Bj) * xiu;
    return through_chart(xi, true);
}

void BubbleFamily::validate() const {
    if (!background) throw std::invalid_argument("BubbleFamily: missing background");
    bubble.validate();
    if (!(eta > 0.0) || eta >= 1.0) throw std::invalid_argument("BubbleFamily: eta must be in (0,1)");
    if (ladder.empty()) throw std::invalid_argument("BubbleFamily: empty ladder");
    double prev = eta * eta * (1.0 + 1e-12);
    for (double d : ladder) {
        if (!(d > 0.0) || d > eta * eta)
            throw std::invalid_argument("BubbleFamily: ladder entry outside (0, eta^2]");
        if (d > prev) throw std::invalid_argument("BubbleFamily: ladder must be decreasing");
        prev = d;
    }
}

GluedBubbleMap BubbleFamily::glue(double delta) const {
    return GluedBubbleMap(background, bubble, eta, delta, profile);
}

double energy(const SphereMapBase& map, const sphere::TwoChartSphereGrid& g) {
    std::array<Field, 2> dens{Field(g.n(), g.n()), Field(g.n(), g.n())};
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j) {
                if (sphere::TwoChartSphereGrid::pou(std::abs(g.node(i, j))) <= 0.0) continue;
                dens[c](i, j) = map.eval(g.node(i, j), c).energy_density();
            }
    return 0.5 * g.integrate_chart_density(dens);
}

double energy_composite(const SphereMapBase& map, double delta, int n_s_per_unit, int n_theta) {
    const double s0 = std::log(delta) - 4.0, s1 = 4.0;
    const int n_s = std::max(32, int(std::ceil((s1 - s0) * n_s_per_unit)));
    const double ds = (s1 - s0) / n_s, dth = kTwoPi / n_theta;
    double acc = 0.0;
    for (int i = 0; i < n_s; ++i) {
        const double s = s0 + (i + 0.5) * ds;
        const double r = std::exp(s);
        double row = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            const Cplx z = std::polar(r, dth * j);
            row += map.eval(z, 0).energy_density();
        }
        acc += row * std::exp(2.0 * s) * ds * dth;
    }
    // cap corrections: midpoint value times cap area, in each pole's chart
    const double r_in = std::exp(s0), r_out = std::exp(-s1);
    acc += map.eval(Cplx(0.0, 0.0), 0).energy_density() * kPi * r_in * r_in;
    acc += map.eval(Cplx(0.0, 0.0), 1).energy_density() * kPi * r_out * r_out;
    return 0.5 * acc;
}

NeckProfile neck_energy_profile(const SphereMapBase& map, double eta, double delta,
                                int n_s_per_ring, int n_theta) {
    NeckProfile out;
    const double r_in = delta / eta;
    const double dth = kTwoPi / n_theta;
    int j = 0;
    while (r_in * std::pow(2.0, j) < eta * (1.0 - 1e-12)) {
        const double a = std::log(r_in) + j * std::log(2.0);
        const double b = std::min(a + std::log(2.0), std::log(eta));
        const int ns = n_s_per_ring;
        const double ds = (b - a) / ns;
        double acc = 0.0;
        for (int i = 0; i < ns; ++i) {
            const double s = a + (i + 0.5) * ds;
            double row = 0.0;
            for (int k = 0; k < n_theta; ++k)
                row += map.eval(std::polar(std::exp(s), dth * k), 0).energy_density();
            acc += row * std::exp(2.0 * s) * ds * dth;
        }
        out.ring_energy.push_back(acc);
        out.sup = std::max(out.sup, acc);
        ++j;
    }
    return out;
}

double average_length(const SphereMapBase& map, double eta, double delta, int n_s_per_unit,
                      int n_theta) {
    const double s0 = std::log(delta / eta), s1 = std::log(eta);
    const int n_s = std::max(16, int(std::ceil((s1 - s0) * n_s_per_unit)));
    const double ds = (s1 - s0) / n_s, dth = kTwoPi / n_theta;
    double acc = 0.0;
    for (int i = 0; i < n_s; ++i) {
        const double s = s0 + (i + 0.5) * ds;
        double row = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            const double th = dth * j;
            const MapJet mj = map.eval(std::polar(std::exp(s), th), 0);
            const double c = std::cos(th), sn = std::sin(th);
            double dr2 = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double d = mj.du[k][0] * c + mj.du[k][1] * sn;
                dr2 += d * d;
            }
            row += std::sqrt(dr2);
        }
        acc += (row / n_theta) * std::exp(s) * ds;   // dr = e^s ds
    }
    return acc;
}

HopfReport hopf_differential(const SphereMapBase& map, const grid::LogPolarGrid& g) {
    HopfReport rep;
    rep.re = Field(g.n_s(), g.n_theta());
    rep.im = Field(g.n_s(), g.n_theta());
    for (int i = 0; i < g.n_s(); ++i)
        for (int j = 0; j < g.n_theta(); ++j) {
            const Cplx z = std::polar(g.r(i), g.theta(j));
            const Cplx h = map.eval(z, 0).hopf() * z * z;
            rep.re(i, j) = h.real();
            rep.im(i, j) = h.imag();
        }
    // residual of holomorphicity in the cylinder coordinate: d/d(conj omega)
    // with omega = s + i theta: 2 d_{conj} = d_s + i d_theta
    Gradient gre = g.gradient(rep.re), gim = g.gradient(rep.im);
    double res = 0.0, nrm = 0.0;
    for (int i = 0; i < g.n_s(); ++i) {
        const double w = g.cell_area(i) * std::exp(-2.0 * g.s(i));   // ds dtheta measure
        for (int j = 0; j < g.n_theta(); ++j) {
            // gradient() returns d/dr, (1/r) d/dtheta; convert to d/ds, d/dtheta
            const double hs_re = gre.gr(i, j) * g.r(i), ht_re = gre.gt(i, j) * g.r(i);
            const double hs_im = gim.gr(i, j) * g.r(i), ht_im = gim.gt(i, j) * g.r(i);
            const double qr = 0.5 * (hs_re - ht_im);
            const double qi = 0.5 * (hs_im + ht_re);
            res += (qr * qr + qi * qi) * w;
            nrm += (rep.re(i, j) * rep.re(i, j) + rep.im(i, j) * rep.im(i, j)) * w;
        }
    }
    rep.residual = std::sqrt(res);
    rep.norm = std::sqrt(nrm);
    return rep;
}

double conservation_residual(const SphereMapBase& map, const grid::LogPolarGrid& g) {
    // F^{ij} = u^i grad u^j - u^j grad u^i; cylinder residual
    // R = d_s(e^s F_r) + d_theta(e^s F_t), L2(ds dtheta).
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    std::array<Field, 3> Fr, Ft;
    for (auto& f : Fr) f = Field(g.n_s(), g.n_theta());
    for (auto& f : Ft) f = Field(g.n_s(), g.n_theta());
    for (int i = 0; i < g.n_s(); ++i)
        for (int j = 0; j < g.n_theta(); ++j) {
            const double th = g.theta(j);
            const MapJet mj = map.eval(std::polar(g.r(i), th), 0);
            const double c = std::cos(th), sn = std::sin(th);
            for (int p = 0; p < 3; ++p) {
                const int a = pairs[p][0], b = pairs[p][1];
                const double gax = mj.du[a][0], gay = mj.du[a][1];
                const double gbx = mj.du[b][0], gby = mj.du[b][1];
                const double Fx = mj.u[a] * gbx - mj.u[b] * gax;
                const double Fy = mj.u[a] * gby - mj.u[b] * gay;
                // scaled polar components e^s F . e_r etc.
                Fr[p](i, j) = g.r(i) * (Fx * c + Fy * sn);
                Ft[p](i, j) = g.r(i) * (-Fx * sn + Fy * c);
            }
        }
    double acc = 0.0;
    for (int p = 0; p < 3; ++p) {
        Gradient gr = g.gradient(Fr[p]);
        Field dth;
        g.fft()->theta_derivative(Ft[p], dth);
        for (int i = 0; i < g.n_s(); ++i) {
            const double w = g.cell_area(i) * std::exp(-2.0 * g.s(i));
            for (int j = 0; j < g.n_theta(); ++j) {
                const double r = gr.gr(i, j) * g.r(i) + dth(i, j);   // d_s + d_theta parts
                acc += r * r * w;
            }
        }
    }
    return std::sqrt(acc);
}

double conservation_residual(const SphereMapBase& map, const sphere::TwoChartSphereGrid& g) {
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    double acc = 0.0;
    const int n = g.n();
    for (int c = 0; c < 2; ++c) {
        std::array<Field, 3> Fx, Fy;
        for (auto& f : Fx) f = Field(n, n);
        for (auto& f : Fy) f = Field(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (std::abs(g.node(i, j)) > 1.25 + 2.0 * g.h()) continue;
                const MapJet mj = map.eval(g.node(i, j), c);
                for (int p = 0; p < 3; ++p) {
                    const int a = pairs[p][0], b = pairs[p][1];
                    Fx[p](i, j) = mj.u[a] * mj.du[b][0] - mj.u[b] * mj.du[a][0];
                    Fy[p](i, j) = mj.u[a] * mj.du[b][1] - mj.u[b] * mj.du[a][1];
                }
            }
        for (int p = 0; p < 3; ++p) {
            Field dxx, dxy, dyx, dyy;
            g.gradient(Fx[p], dxx, dxy);
            g.gradient(Fy[p], dyx, dyy);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double w = sphere::TwoChartSphereGrid::pou(std::abs(g.node(i, j)));
                    if (w <= 0.0) continue;
                    const double div = dxx(i, j) + dyy(i, j);
                    acc += w * div * div * g.h() * g.h();
                }
        }
    }
    return std::sqrt(acc);
}

double pointwise_bound_check(const SphereMapBase& map, double eta, double delta, double beta,
                             double c, int n_s, int n_theta) {
    grid::LogPolarGrid g(eta, delta, n_s, n_theta);
    // reference energy over A(2 eta, delta)
    double E = 0.0;
    {
        grid::LogPolarGrid ga(2.0 * eta, delta, std::max(n_s, 64), n_theta);
        AnnulusMapSample smp = sample(map, ga);
        E = ga.integrate(smp.energy_density);
    }
    const double L = std::log(eta * eta / delta);
    double sup = 0.0;
    for (int i = 0; i < g.n_s(); ++i)
        for (int j = 0; j < g.n_theta(); ++j) {
            const MapJet mj = map.eval(std::polar(g.r(i), g.theta(j)), 0);
            const double lhs = g.r(i) * g.r(i) * mj.energy_density();
            const double br = std::pow(g.r(i) / eta, beta) + std::pow(delta / (eta * g.r(i)), beta);
            const double rhs = br * E + c / (L * L);
            sup = std::max(sup, lhs / rhs);
        }
    return sup;
}

AnnulusMapSample sample(const SphereMapBase& map, const grid::LogPolarGrid& g) {
    AnnulusMapSample out;
    out.values.comp.assign(3, Field(g.n_s(), g.n_theta()));
    out.energy_density = Field(g.n_s(), g.n_theta());
    for (int i = 0; i < g.n_s(); ++i)
        for (int j = 0; j < g.n_theta(); ++j) {
            const MapJet mj = map.eval(std::polar(g.r(i), g.theta(j)), 0);
            for (int k = 0; k < 3; ++k) out.values.comp[k](i, j) = mj.u[k];
            out.energy_density(i, j) = mj.energy_density();
        }
    return out;
}

} // namespace hmlab::maps
