#include "hmlab/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hmlab::spectral {

namespace {

double one_norm(const SpMat& A) {
    Eigen::VectorXd colsum = Eigen::VectorXd::Zero(A.cols());
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it) colsum[it.col()] += std::fabs(it.value());
    return colsum.maxCoeff();
}

SpectrumReport solve_dense(const WeightedQuadraticForm& form, const EigOptions& opt) {
    Eigen::MatrixXd A = Eigen::MatrixXd(form.A());
    Eigen::MatrixXd M = Eigen::MatrixXd(form.mass);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("solve_weighted_eigen: dense solver failed");
    SpectrumReport rep;
    rep.dense = true;
    const int k = std::min<int>(opt.count, form.dof);
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
    rep.eigenvectors = es.eigenvectors().leftCols(k);
    rep.residuals.resize(k);
    const double anorm = A.cwiseAbs().maxCoeff() * std::sqrt(double(form.dof));
    const double mnorm = M.cwiseAbs().maxCoeff() * std::sqrt(double(form.dof));
    for (int i = 0; i < k; ++i) {
        Eigen::VectorXd x = rep.eigenvectors.col(i);
        const double scale = (anorm + std::fabs(rep.eigenvalues[i]) * mnorm) * x.norm() + 1e-300;
        rep.residuals[i] = (A * x - rep.eigenvalues[i] * (M * x)).norm() / scale;
    }
    return rep;
}

SpectrumReport solve_lanczos(const WeightedQuadraticForm& form, const EigOptions& opt) {
    const int n = form.dof;
    const int k = std::min(opt.count, n - 2);
    SpMat A = form.A();
    const SpMat& M = form.mass;

    // safe shift strictly below the spectrum: Q(w) >= -sup(V/omega) |w|_M^2
    double sigma = opt.shift;
    if (sigma == 0.0) {
        const double bound = form.sup_V_over_omega();
        sigma = -(1.05 * bound + 0.1 * std::max(1.0, bound));
    }

    Eigen::SimplicialLDLT<SpMat> ldlt;
    for (int attempt = 0;; ++attempt) {
        SpMat K = A - sigma * M;
        ldlt.compute(K);
        if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) break;
        if (attempt > 12)
            throw std::runtime_error("solve_weighted_eigen: could not find a safe shift");
        sigma = 2.0 * sigma - 1.0;
    }

    int ncv = opt.max_basis > 0 ? opt.max_basis : std::min(n, std::max(2 * k + 30, 60));
    const double anorm = one_norm(A), mnorm = one_norm(M);
    SpectrumReport rep;
    for (int round = 0;; ++round) {
        Eigen::MatrixXd V(n, ncv);
        std::vector<double> alpha, beta;
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = std::sin(0.7 * (i + 1)) + 1e-3;  // fixed start
        v /= std::sqrt(v.dot(M * v));
        int m = 0;
        Eigen::VectorXd vprev = Eigen::VectorXd::Zero(n);
        double beta_prev = 0.0;
        for (; m < ncv; ++m) {
            V.col(m) = v;
            Eigen::VectorXd w = ldlt.solve(M * v);
            const double a = w.dot(M * v);
            alpha.push_back(a);
            w -= a * v + beta_prev * vprev;
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::VectorXd proj = V.leftCols(m + 1).transpose() * (M * w);
                w -= V.leftCols(m + 1) * proj;
            }
            const double b = std::sqrt(std::max(w.dot(M * w), 0.0));
            if (b < 1e-13) { ++m; break; }
            beta.push_back(b);
            vprev = v;
            beta_prev = b;
            v = w / b;
        }
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(T);
        std::vector<int> order(m);
        for (int i = 0; i < m; ++i) order[i] = i;
        // largest theta of (A - sigma M)^{-1} M <-> smallest lambda
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return tes.eigenvalues()[a] > tes.eigenvalues()[b]; });
        const int kk = std::min(k, m);
        rep.eigenvalues.resize(kk);
        rep.eigenvectors.resize(n, kk);
        rep.residuals.resize(kk);
        bool converged = true;
        for (int i = 0; i < kk; ++i) {
            const double theta = tes.eigenvalues()[order[i]];
            const double lambda = sigma + 1.0 / theta;
            Eigen::VectorXd x = V.leftCols(m) * tes.eigenvectors().col(order[i]);
            x /= x.norm();
            rep.eigenvalues[i] = lambda;
            rep.eigenvectors.col(i) = x;
            const double scale = (anorm + std::fabs(lambda) * mnorm) + 1e-300;
            rep.residuals[i] = (A * x - lambda * (M * x)).norm() / scale;
            if (rep.residuals[i] > opt.tol) converged = false;
        }
        // ensure ascending eigenvalue order
        for (int i = 1; i < kk; ++i)
            if (rep.eigenvalues[i] < rep.eigenvalues[i - 1]) {
                std::vector<int> asc(kk);
                for (int j = 0; j < kk; ++j) asc[j] = j;
                std::sort(asc.begin(), asc.end(), [&](int a, int b) {
                    return rep.eigenvalues[a] < rep.eigenvalues[b];
                });
                SpectrumReport s2;
                s2.eigenvalues.resize(kk);
                s2.residuals.resize(kk);
                s2.eigenvectors.resize(n, kk);
                for (int j = 0; j < kk; ++j) {
                    s2.eigenvalues[j] = rep.eigenvalues[asc[j]];
                    s2.residuals[j] = rep.residuals[asc[j]];
                    s2.eigenvectors.col(j) = rep.eigenvectors.col(asc[j]);
                }
                rep = s2;
                break;
            }
        if (converged || ncv >= n || round >= 3) {
            const double worst = *std::max_element(rep.residuals.begin(), rep.residuals.end());
            if (!converged && worst > 1e-5) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.3e", worst);
                throw std::runtime_error(
                    std::string("solve_weighted_eigen: Lanczos failed to converge; worst "
                                "scaled residual ") + buf);
            }
            break;
        }
        ncv = std::min(n, 2 * ncv);
    }
    return rep;
}

} // namespace

SpectrumReport solve_weighted_eigen(const WeightedQuadraticForm& form, const EigOptions& opt) {
    if (form.dof <= 0) throw std::invalid_argument("solve_weighted_eigen: empty form");
    if (opt.count > form.dof)
        throw std::invalid_argument("solve_weighted_eigen: count exceeds DOF");
    SpectrumReport rep = form.dof <= opt.dense_threshold ? solve_dense(form, opt)
                                                         : solve_lanczos(form, opt);
    rep.zero_tolerance = default_zero_tolerance(rep);
    auto [ind, nul] = index_nullity(rep, rep.zero_tolerance);
    rep.index = ind;
    rep.nullity = nul;
    return rep;
}

double default_zero_tolerance(const SpectrumReport& rep) {
    const int m = int(std::min<size_t>(20, rep.eigenvalues.size()));
    if (m == 0) return 0.0;
    std::vector<double> mag(m);
    for (int i = 0; i < m; ++i) mag[i] = std::fabs(rep.eigenvalues[i]);
    std::nth_element(mag.begin(), mag.begin() + m / 2, mag.end());
    return 1e-3 * mag[m / 2];
}

std::pair<int, int> index_nullity(const SpectrumReport& rep, double tau) {
    if (rep.eigenvalues.empty() || rep.eigenvalues.back() <= tau)
        throw std::runtime_error("index_nullity: spectrum window does not reach past +tau");
    int ind = 0, nul = 0;
    for (double l : rep.eigenvalues) {
        if (l < -tau)
            ++ind;
        else if (l <= tau)
            ++nul;
    }
    return {ind, nul};
}

} // namespace hmlab::spectral
