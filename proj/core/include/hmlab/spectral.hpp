#pragma once

#include <Eigen/Sparse>

#include <functional>
#include <optional>
#include <vector>

#include "hmlab/grid.hpp"
#include "hmlab/maps.hpp"

namespace hmlab::spectral {

using sphere::Cplx;
using sphere::Vec3;
using SpMat = Eigen::SparseMatrix<double>;

// ---- weights --------------------------------------------------------------

/// Piecewise neck weight: the annulus branch on A(eta, delta), the constant
/// branch outside B_eta, and the bubble-flattened branch inside B_{delta/eta}.
struct NeckWeight {
    double eta, delta, beta;
    NeckWeight(double eta_, double delta_, double beta_);
    double operator()(double rho) const;
};

/// Limit weight on the background surface (flat outside B_eta, Hardy-type inside).
double omega_eta_infty(double rho, double eta, double beta);
/// Limit weight on the bubble plane.
double omega_hat_infty(double rho, double eta, double beta);

// ---- assembled forms --------------------------------------------------------

/// Symmetric Galerkin realization of Q(w) = int |dw|^2 - V |w|^2 against the
/// weighted inner product <w,v>_omega, on tangential sections reduced to two
/// frame components per node (or one component for scalar problems).
struct WeightedQuadraticForm {
    SpMat stiffness;           // int grad w . grad v
    SpMat potential;           // int V w v      (same measure as stiffness side)
    SpMat mass;                // int omega w v
    int dof = 0;
    int dim = 1;               // components per node
    std::vector<Vec3> frame_e1, frame_e2, node_u;   // per node (vector problems)
    std::vector<double> node_V, node_omega;         // nodal samples, diagnostics

    SpMat A() const { return SpMat(stiffness - potential); }
    double sup_V_over_omega() const;   // the mu ratio of the assembled fields
};

// ---- meshes -----------------------------------------------------------------

/// Log-polar band s in [s0, s1] x periodic theta with either Dirichlet ends or
/// pole caps (fan elements closing the sphere through the chart at each pole).
struct BandMesh {
    double s0, s1;
    int n_s, n_theta;
    bool cap_inner = false, cap_outer = false;

    int nodes() const { return n_s * n_theta + (cap_inner ? 1 : 0) + (cap_outer ? 1 : 0); }
    double ds() const { return (s1 - s0) / (n_s - 1); }
    double dtheta() const;
    int node_id(int i, int j) const { return i * n_theta + j; }
    int pole_inner_id() const { return n_s * n_theta; }
    int pole_outer_id() const { return n_s * n_theta + (cap_inner ? 1 : 0); }
};

/// Densities entering the band assembly, all against the ds dtheta measure in
/// the band and the local flat chart measure dx^2 on the caps.
struct BandDensities {
    std::function<double(double s, double th)> potential;   // may be null
    std::function<double(double s, double th)> mass;
    std::function<double(int chart, Cplx w)> cap_potential; // local chart coordinate
    std::function<double(int chart, Cplx w)> cap_mass;
};

/// Assemble on the band mesh. If `map` is set, unknowns are the two tangential
/// frame components per node; otherwise scalar. Dirichlet ends drop their
/// boundary rings from the unknowns.
WeightedQuadraticForm assemble_band(const BandMesh& mesh, const BandDensities& dens,
                                    const maps::SphereMapBase* map);

// ---- high-level assemblies ---------------------------------------------------

/// Jacobi form of a map restricted to the annulus A(eta, delta), Dirichlet
/// boundary, flat chart measure, weight omega(rho) against dx^2.
WeightedQuadraticForm assemble_jacobi_annulus(const maps::SphereMapBase& map, double eta,
                                              double delta, int n_s, int n_theta,
                                              const std::function<double(double)>& omega,
                                              double potential_scale = 1.0);

enum class SphereWeight {
    Uniform,        // omega = 1 against dvol
    NeckOmega,      // omega_{eta,k} of the neck analysis against dvol
    EtaInfty,       // background limit weight against dvol
    BubbleHat,      // conformal transfer of omega_hat to the sphere
};

struct SphereWeightSpec {
    SphereWeight kind = SphereWeight::Uniform;
    double eta = 0.1, delta = 1e-4, beta = 0.5;
};

/// Jacobi form of a map on the whole sphere, assembled on the log-polar band
/// |log r| <= s_half plus two pole caps.
WeightedQuadraticForm assemble_jacobi_sphere(const maps::SphereMapBase& map, double s_half,
                                             int n_s, int n_theta, const SphereWeightSpec& w);

/// Same mesh/weights for a bubbling map: band adapted to [delta, 1] scales.
WeightedQuadraticForm assemble_jacobi_bubble_sphere(const maps::SphereMapBase& map, double delta,
                                                    double margin, int n_s_per_unit, int n_theta,
                                                    const SphereWeightSpec& w);

// ---- eigen solvers ------------------------------------------------------------

struct SpectrumReport {
    std::vector<double> eigenvalues;    // ascending
    Eigen::MatrixXd eigenvectors;       // columns matching eigenvalues
    std::vector<double> residuals;      // |A x - lambda M x| / |x|_M scaled
    double zero_tolerance = 0.0;        // tau used by index_nullity
    int index = 0, nullity = 0;
    bool dense = false;
};

struct EigOptions {
    int count = 12;
    double shift = 0.0;            // 0: automatic safe shift below lambda_min
    int dense_threshold = 2500;
    double tol = 2e-7;
    int max_basis = 0;             // 0: automatic
};

SpectrumReport solve_weighted_eigen(const WeightedQuadraticForm& form, const EigOptions& opt);

/// Counts with the given zero tolerance; requires the spectrum to reach past
/// +tau, otherwise throws (insufficient window).
std::pair<int, int> index_nullity(const SpectrumReport& rep, double tau);

/// Default tolerance policy: 1e-3 times the median |lambda| of the first
/// min(20, count) eigenvalues.
double default_zero_tolerance(const SpectrumReport& rep);

// ---- annulus eigenvalues -----------------------------------------------------

enum class HardyVariant { Hardy, Inner, Outer };

struct HardyResult {
    double lambda1_numeric = 0.0;
    std::optional<double> lambda1_analytic;   // pi^2/log^2(eta^2/delta) for Hardy
};

/// Smallest Dirichlet eigenvalue of -Delta f = lambda omega f on A(eta, delta)
/// by the axisymmetric log-variable discretization (weights: 1/|x|^2,
/// delta^b/(eta^b |x|^{2+b}), |x|^{b-2}/eta^b).
HardyResult annulus_hardy_eigen(double eta, double delta, HardyVariant variant, double beta,
                                int n_s = 512);

/// Smallest eigenvalue of a 1-D Dirichlet problem -Y'' = lambda m(s) Y on
/// [s0, s1] by finite differences (helper shared by the hardy variants and the
/// weighted neck spectrum).
double axisym_lambda1(double s0, double s1, const std::function<double(double)>& m, int n);

/// lambda_1 of the full neck-weighted problem int |grad f|^2 >= lambda int
/// omega_{eta,k} f^2 on A(eta, delta) (axisymmetric ground state).
double neck_weight_lambda1(double eta, double delta, double beta, int n_s = 1024);

/// sup over sample nodes of |du|^2 / omega in the round-sphere metric (the
/// quantity whose smallness drives the spectral lower bound); sampled on the
/// adapted band plus caps.
double mu_ratio(const maps::SphereMapBase& map, const SphereWeightSpec& w, double s_min,
                double s_max, int n_s = 256, int n_theta = 64);

/// Empirical lambda_0 of the neck positivity statement: smallest eigenvalue of
/// the Jacobi form on tangential fields vanishing on the annulus boundary,
/// normalized by the omega_{eta,k} mass.
double neck_positivity_min(const maps::SphereMapBase& map, double eta, double delta, double beta,
                           int n_s = 96, int n_theta = 48, double potential_scale = 1.0);

} // namespace hmlab::spectral
