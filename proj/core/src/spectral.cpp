#include "hmlab/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace hmlab::spectral {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

NeckWeight::NeckWeight(double eta_, double delta_, double beta_)
    : eta(eta_), delta(delta_), beta(beta_) {
    if (!(delta > 0.0) || !(delta < eta * eta))
        throw std::invalid_argument("NeckWeight: requires 0 < delta < eta^2");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("NeckWeight: requires beta in (0,1)");
}

double NeckWeight::operator()(double rho) const {
    const double L2 = std::pow(std::log(eta * eta / delta), 2);
    if (rho >= eta) {
        return (1.0 + std::pow(delta, beta) / std::pow(eta, 2.0 * beta) + 1.0 / L2) / (eta * eta);
    }
    if (rho > delta / eta) {
        const double b1 = std::pow(rho / eta, beta);
        const double b2 = std::pow(delta / (eta * rho), beta);
        return (b1 + b2 + 1.0 / L2) / (rho * rho);
    }
    const double e2 = eta * eta, d2 = delta * delta;
    const double q = 1.0 + rho * rho / d2;
    return (e2 / d2) * ((1.0 + e2) * (1.0 + e2) / (e2 * e2 * q * q) +
                        std::pow(delta, beta) / std::pow(eta, 2.0 * beta) + 1.0 / L2);
}

double omega_eta_infty(double rho, double eta, double beta) {
    if (rho >= eta) return 1.0 / (eta * eta);
    return std::pow(rho / eta, beta) / (rho * rho);
}

double omega_hat_infty(double rho, double eta, double beta) {
    if (rho <= 1.0 / eta) {
        const double t = 1.0 + rho * rho;
        return (1.0 + eta * eta) * (1.0 + eta * eta) / (eta * eta * t * t);
    }
    return 1.0 / (std::pow(eta, beta) * std::pow(rho, 2.0 + beta));
}

double axisym_lambda1(double s0, double s1, const std::function<double(double)>& m, int n) {
    // -Y'' = lambda m(s) Y, Dirichlet; symmetric FD on interior nodes via the
    // similarity transform D^{-1/2} T D^{-1/2}.
    const int ni = n - 2;
    const double h = (s1 - s0) / (n - 1);
    Eigen::VectorXd diag(ni), sub(ni - 1), ms(ni);
    for (int i = 0; i < ni; ++i) ms[i] = m(s0 + (i + 1) * h);
    for (int i = 0; i < ni; ++i) diag[i] = 2.0 / (h * h) / ms[i];
    for (int i = 0; i + 1 < ni; ++i) sub[i] = -1.0 / (h * h) / std::sqrt(ms[i] * ms[i + 1]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

HardyResult annulus_hardy_eigen(double eta, double delta, HardyVariant variant, double beta,
                                int n_s) {
    if (!(delta > 0.0) || !(delta < eta * eta))
        throw std::invalid_argument("annulus_hardy_eigen: requires 0 < delta < eta^2");
    if (variant != HardyVariant::Hardy && (!(beta > 0.0) || !(beta < 1.0)))
        throw std::invalid_argument("annulus_hardy_eigen: beta must be in (0,1)");
    const double s0 = std::log(delta / eta), s1 = std::log(eta);
    std::function<double(double)> m;
    switch (variant) {
        case HardyVariant::Hardy:
            m = [](double) { return 1.0; };
            break;
        case HardyVariant::Inner:
            m = [=](double s) { return std::pow(delta / (eta * std::exp(s)), beta); };
            break;
        case HardyVariant::Outer:
            m = [=](double s) { return std::pow(std::exp(s) / eta, beta); };
            break;
    }
    HardyResult out;
    out.lambda1_numeric = axisym_lambda1(s0, s1, m, n_s);
    if (variant == HardyVariant::Hardy) {
        const double L = std::log(eta * eta / delta);
        out.lambda1_analytic = kPi * kPi / (L * L);
    }
    return out;
}

double neck_weight_lambda1(double eta, double delta, double beta, int n_s) {
    NeckWeight w(eta, delta, beta);
    const double s0 = std::log(delta / eta), s1 = std::log(eta);
    auto m = [&](double s) {
        const double rho = std::exp(s);
        return w(rho) * rho * rho;   // mass density in s after e^{2s} Jacobian
    };
    return axisym_lambda1(s0, s1, m, n_s);
}

double mu_ratio(const maps::SphereMapBase& map, const SphereWeightSpec& w, double s_min,
                double s_max, int n_s, int n_theta) {
    std::function<double(double)> omega;
    switch (w.kind) {
        case SphereWeight::Uniform: omega = [](double) { return 1.0; }; break;
        case SphereWeight::NeckOmega: {
            NeckWeight nw(w.eta, w.delta, w.beta);
            omega = [nw](double rho) { return nw(rho); };
            break;
        }
        case SphereWeight::EtaInfty: {
            const double eta = w.eta, beta = w.beta;
            omega = [eta, beta](double rho) { return omega_eta_infty(rho, eta, beta); };
            break;
        }
        case SphereWeight::BubbleHat: {
            const double eta = w.eta, beta = w.beta;
            omega = [eta, beta](double rho) {
                const double t = 1.0 + rho * rho;
                return omega_hat_infty(rho, eta, beta) * t * t / 4.0;
            };
            break;
        }
    }
    double sup = 0.0;
    const double ds = (s_max - s_min) / (n_s - 1);
    for (int i = 0; i < n_s; ++i) {
        const double rho = std::exp(s_min + i * ds);
        const double mass = omega(rho) * sphere::conformal_factor(Cplx(rho, 0.0));
        for (int j = 0; j < n_theta; ++j) {
            const maps::MapJet mj =
                map.eval(std::polar(rho, 2.0 * kPi * j / n_theta), 0);
            sup = std::max(sup, mj.energy_density() / mass);
        }
    }
    // the two pole caps
    for (int chart = 0; chart < 2; ++chart) {
        const double rho = chart == 0 ? std::exp(s_min) : std::exp(-s_max);
        const double rho0 = chart == 0 ? 0.5 * rho : 1.0 / (0.5 * rho);
        const double mass = omega(rho0) * sphere::conformal_factor(Cplx(0.5 * rho, 0.0));
        sup = std::max(sup, map.eval(Cplx(0.0, 0.0), chart).energy_density() / mass);
    }
    return sup;
}

double neck_positivity_min(const maps::SphereMapBase& map, double eta, double delta, double beta,
                           int n_s, int n_theta, double potential_scale) {
    NeckWeight w(eta, delta, beta);
    auto omega = [w](double rho) { return w(rho); };
    WeightedQuadraticForm form =
        assemble_jacobi_annulus(map, eta, delta, n_s, n_theta, omega, potential_scale);
    EigOptions opt;
    opt.count = 6;
    SpectrumReport rep = solve_weighted_eigen(form, opt);
    return rep.eigenvalues[0];
}

} // namespace hmlab::spectral
