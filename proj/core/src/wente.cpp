#include "hmlab/wente.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hmlab::wente {

Field jacobian_rhs(const grid::DiskGrid& g, const Field& a, const Field& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("jacobian_rhs: shape mismatch");
    Gradient ga = g.gradient(a), gb = g.gradient(b);
    Field gax, gay, gbx, gby;
    g.to_cartesian(ga, gax, gay);
    g.to_cartesian(gb, gbx, gby);
    Field out(a.nr, a.nth);
    for (size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = gax.v[k] * gby.v[k] - gay.v[k] * gbx.v[k];
    return out;
}

Field solve_dirichlet(const grid::DiskGrid& g, const Field& rhs, double* residual) {
    if (rhs.nr != g.n_rings() || rhs.nth != g.n_theta())
        throw std::invalid_argument("solve_dirichlet: shape mismatch");
    const int nr = g.n_r();          // rings 0..nr, boundary at nr
    const int nmodes = g.fft()->nmodes();
    const double h = g.h();

    std::vector<std::complex<double>> spec;
    g.fft()->forward(rhs, spec);
    std::vector<std::complex<double>> sol(spec.size(), 0.0);

    std::vector<double> diag(nr), lower(nr), upper(nr);
    std::vector<std::complex<double>> rhsv(nr), x(nr);
    for (int k = 0; k < nmodes; ++k) {
        const int i0 = (k == 0) ? 0 : 1;       // center unknown only for mode 0
        const int nun = nr - i0;               // unknowns i0..nr-1
        for (int i = i0; i < nr; ++i) {
            const int row = i - i0;
            if (i == 0) {
                diag[row] = 4.0 / (h * h);
                upper[row] = -4.0 / (h * h);
                lower[row] = 0.0;
            } else {
                const double rm = g.r(i) - 0.5 * h, rp = g.r(i) + 0.5 * h;
                diag[row] = (rm + rp) / (g.r(i) * h * h) + double(k) * k / (g.r(i) * g.r(i));
                lower[row] = -rm / (g.r(i) * h * h);
                upper[row] = -rp / (g.r(i) * h * h);
            }
            rhsv[row] = spec[size_t(i) * nmodes + k];
        }
        // mode >= 1: the coupling to the center vanishes since phi(0) = 0
        // Thomas algorithm
        std::vector<double> cp(nun);
        std::vector<std::complex<double>> dp(nun);
        cp[0] = upper[0] / diag[0];
        dp[0] = rhsv[0] / diag[0];
        for (int i = 1; i < nun; ++i) {
            const double m = diag[i] - lower[i] * cp[i - 1];
            cp[i] = upper[i] / m;
            dp[i] = (rhsv[i] - lower[i] * dp[i - 1]) / m;
        }
        x[nun - 1] = dp[nun - 1];
        for (int i = nun - 2; i >= 0; --i) x[i] = dp[i] - cp[i] * x[i + 1];
        for (int i = i0; i < nr; ++i) sol[size_t(i) * nmodes + k] = x[i - i0];
        // boundary ring stays zero
    }
    Field phi(g.n_rings(), g.n_theta());
    g.fft()->inverse(sol, phi);
    for (int j = 0; j < g.n_theta(); ++j) phi(nr, j) = 0.0;
    if (residual) {
        Field lap = g.laplacian_apply(phi);
        double acc = 0.0;
        for (int i = 0; i <= nr; ++i)
            for (int j = 0; j < g.n_theta(); ++j) {
                const double r = lap(i, j) + rhs(i, j);
                acc += r * r * g.cell_area(i);
            }
        *residual = std::sqrt(acc);
    }
    return phi;
}

WenteProblem solve(const grid::DiskGrid& g, const Field& a, const Field& b) {
    WenteProblem p;
    p.a = a;
    p.b = b;
    p.rhs = jacobian_rhs(g, a, b);
    p.phi = solve_dirichlet(g, p.rhs, &p.residual);
    return p;
}

double f_weight(double r) {
    if (r <= 0.0 || r >= 1.0) return 0.0;
    const double lg = std::log1p(1.0 / r);
    return r * r * lg * lg * std::log1p(std::log(1.0 / r));
}

double weighted_wente_ratio(const grid::DiskGrid& g, const Field& a, const Field& b) {
    WenteProblem p = solve(g, a, b);
    {
        Field absrhs(p.rhs.nr, p.rhs.nth);
        for (size_t k = 0; k < absrhs.v.size(); ++k) absrhs.v[k] = std::fabs(p.rhs.v[k]);
        const double scale = band_energy(g, a, 0.0, 2.0) + band_energy(g, b, 0.0, 2.0);
        if (g.integrate(absrhs) <= 1e-13 * std::max(scale, 1e-300))
            throw std::invalid_argument("weighted_wente_ratio: vanishing Jacobian");
    }
    Gradient gp = g.gradient(p.phi), ga = g.gradient(a), gb = g.gradient(b);
    Field num(a.nr, a.nth), denb(a.nr, a.nth), dena(a.nr, a.nth);
    for (int i = 0; i < a.nr; ++i) {
        const double r = g.r(i);
        for (int j = 0; j < a.nth; ++j) {
            const double p2 = gp.gr(i, j) * gp.gr(i, j) + gp.gt(i, j) * gp.gt(i, j);
            const double a2 = ga.gr(i, j) * ga.gr(i, j) + ga.gt(i, j) * ga.gt(i, j);
            const double b2 = gb.gr(i, j) * gb.gr(i, j) + gb.gt(i, j) * gb.gt(i, j);
            num(i, j) = r * r * p2;
            dena(i, j) = a2;
            denb(i, j) = f_weight(r) * b2;
        }
    }
    const double nv = g.integrate(num);
    const double da = g.integrate(dena), db = g.integrate(denb);
    if (da < 1e-28 || db < 1e-28)
        throw std::invalid_argument("weighted_wente_ratio: degenerate (constant) input pair");
    return nv / (da * db);
}

namespace {
double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * (3.0 - 2.0 * u);
}
/// chi = 1 on [0, 1/2], 0 on [1, inf)
double half_cutoff(double q) { return 1.0 - smooth_step(2.0 * q - 1.0); }
} // namespace

DyadicPieces dyadic_decompose(const grid::DiskGrid& g, const Field& b, int depth) {
    const double max_depth = std::log2(double(g.n_r())) - 2.0;
    if (depth < 1 || depth > int(max_depth))
        throw std::invalid_argument("dyadic_decompose: depth exceeds grid resolution");
    DyadicPieces out;
    out.depth = depth;
    Field cur = b;   // b^k
    for (int k = 1; k <= depth; ++k) {
        const double rho = std::pow(2.0, -k) * g.radius();
        // T_rho(cur) = chi_rho (cur - mean_{B_rho \ B_rho/2} cur)
        double mean = 0.0, area = 0.0;
        for (int i = 0; i < cur.nr; ++i) {
            const double r = g.r(i);
            if (r < 0.5 * rho || r > rho) continue;
            for (int j = 0; j < cur.nth; ++j) {
                mean += cur(i, j) * g.cell_area(i);
                area += g.cell_area(i);
            }
        }
        mean /= area;
        Field next(cur.nr, cur.nth);
        for (int i = 0; i < cur.nr; ++i) {
            const double c = half_cutoff(g.r(i) / rho);
            for (int j = 0; j < cur.nth; ++j) next(i, j) = c * (cur(i, j) - mean);
        }
        Field piece = cur;
        piece -= next;
        out.pieces.push_back(std::move(piece));
        cur = std::move(next);
    }
    out.pieces.push_back(std::move(cur));   // remainder carries grad b inside B_{2^-depth}
    return out;
}

double band_energy(const grid::DiskGrid& g, const Field& f, double a, double b) {
    Gradient gr = g.gradient(f);
    double acc = 0.0;
    for (int i = 0; i < f.nr; ++i) {
        const double r = g.r(i);
        if (r < a || r >= b) continue;
        for (int j = 0; j < f.nth; ++j)
            acc += (gr.gr(i, j) * gr.gr(i, j) + gr.gt(i, j) * gr.gt(i, j)) * g.cell_area(i);
    }
    return acc;
}

MorreyReport morrey_decrease_check(const grid::DiskGrid& g, const Field& a, const Field& b,
                                   double alpha) {
    MorreyReport rep;
    rep.gamma = std::max(std::pow(2.0, -alpha), 2.0 / 3.0);
    WenteProblem p = solve(g, a, b);
    const int K = int(std::log2(double(g.n_r()))) - 2;
    for (int k = 0; k <= K; ++k) {
        const double hi = std::pow(2.0, -k) * g.radius();
        rep.ring_energy.push_back(band_energy(g, p.phi, 0.5 * hi, hi));
        rep.ring_energy_b.push_back(band_energy(g, b, 0.5 * hi, hi));
    }
    const double ea = band_energy(g, a, 0.0, g.radius() * 1.0001);
    double c = 0.0;
    for (int k = 0; k + 1 <= K; ++k) {
        double conv = 0.0;
        for (int n = 0; n <= K; ++n)
            conv += std::pow(rep.gamma, std::abs(n - k)) * rep.ring_energy_b[n];
        const double lhs = rep.ring_energy[k + 1] - std::pow(rep.gamma, k + 1) * rep.ring_energy[0];
        if (lhs > 0.0 && ea * conv > 0.0) c = std::max(c, lhs / (ea * conv));
    }
    rep.c_alpha = c;
    return rep;
}

} // namespace hmlab::wente
