#include "hmlab/spectral.hpp"

#include <cmath>

namespace hmlab::spectral {

namespace {
constexpr double kPi = 3.14159265358979323846;

const double kG2[2] = {0.5 - 0.5 / 1.7320508075688772, 0.5 + 0.5 / 1.7320508075688772};

void frame_from_value(const Vec3& u, Vec3& e1, Vec3& e2) {
    Vec3 a = std::fabs(u[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    double d = a[0] * u[0] + a[1] * u[1] + a[2] * u[2];
    for (int k = 0; k < 3; ++k) e1[k] = a[k] - d * u[k];
    double n = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (int k = 0; k < 3; ++k) e1[k] /= n;
    e2 = {u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2], u[0] * e1[1] - u[1] * e1[0]};
}
} // namespace

double BandMesh::dtheta() const { return 2.0 * kPi / n_theta; }

double WeightedQuadraticForm::sup_V_over_omega() const {
    double sup = 0.0;
    for (size_t k = 0; k < node_V.size(); ++k)
        if (node_omega[k] > 0.0) sup = std::max(sup, node_V[k] / node_omega[k]);
    return sup;
}

WeightedQuadraticForm assemble_band(const BandMesh& mesh, const BandDensities& dens,
                                    const maps::SphereMapBase* map) {
    const int dim = map ? 2 : 1;
    const int n_s = mesh.n_s, nth = mesh.n_theta;
    const double ds = mesh.ds(), dth = mesh.dtheta();
    const int nnodes = mesh.nodes();

    // node frames / map values
    std::vector<Vec3> e1(nnodes), e2(nnodes), uval(nnodes);
    std::vector<double> nodeV(nnodes, 0.0), nodeW(nnodes, 0.0);
    auto node_z = [&](int i, int j) { return std::polar(std::exp(mesh.s0 + i * ds), dth * j); };
    if (map) {
        for (int i = 0; i < n_s; ++i)
            for (int j = 0; j < nth; ++j) {
                const maps::MapJet mj = map->eval(node_z(i, j), 0);
                const int id = mesh.node_id(i, j);
                uval[id] = mj.u;
                frame_from_value(mj.u, e1[id], e2[id]);
            }
        if (mesh.cap_inner) {
            const maps::MapJet mj = map->eval(Cplx(0, 0), 0);
            uval[mesh.pole_inner_id()] = mj.u;
            frame_from_value(mj.u, e1[mesh.pole_inner_id()], e2[mesh.pole_inner_id()]);
        }
        if (mesh.cap_outer) {
            const maps::MapJet mj = map->eval(Cplx(0, 0), 1);
            uval[mesh.pole_outer_id()] = mj.u;
            frame_from_value(mj.u, e1[mesh.pole_outer_id()], e2[mesh.pole_outer_id()]);
        }
    }
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < nth; ++j) {
            const double s = mesh.s0 + i * ds, th = dth * j;
            const double jac = std::exp(2.0 * s);
            const int id = mesh.node_id(i, j);
            if (dens.potential) nodeV[id] = dens.potential(s, th) / jac;
            if (dens.mass) nodeW[id] = dens.mass(s, th) / jac;
        }

    // free dof numbering: Dirichlet ends lose their boundary ring
    std::vector<int> dofof(nnodes, -1);
    int ndof = 0;
    for (int i = 0; i < n_s; ++i) {
        const bool drop = (!mesh.cap_inner && i == 0) || (!mesh.cap_outer && i == n_s - 1);
        for (int j = 0; j < nth; ++j)
            if (!drop) dofof[mesh.node_id(i, j)] = ndof++;
    }
    if (mesh.cap_inner) dofof[mesh.pole_inner_id()] = ndof++;
    if (mesh.cap_outer) dofof[mesh.pole_outer_id()] = ndof++;

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> tK, tV, tM;
    tK.reserve(size_t(n_s) * nth * 64);
    tV.reserve(size_t(n_s) * nth * 64);
    tM.reserve(size_t(n_s) * nth * 64);

    auto scatter = [&](std::vector<Trip>& out, const int* ids, const double* loc, int m) {
        // loc is m x m in node space; expand with frame dot products
        for (int a = 0; a < m; ++a) {
            const int na = ids[a];
            if (dofof[na] < 0) continue;
            for (int b = 0; b < m; ++b) {
                const int nb = ids[b];
                if (dofof[nb] < 0) continue;
                const double v = loc[a * m + b];
                if (v == 0.0) continue;
                if (dim == 1) {
                    out.emplace_back(dofof[na], dofof[nb], v);
                } else {
                    const Vec3 *fa[2] = {&e1[na], &e2[na]}, *fb[2] = {&e1[nb], &e2[nb]};
                    for (int da = 0; da < 2; ++da)
                        for (int db = 0; db < 2; ++db) {
                            double fdot = 0.0;
                            for (int k = 0; k < 3; ++k) fdot += (*fa[da])[k] * (*fb[db])[k];
                            if (fdot != 0.0)
                                out.emplace_back(dofof[na] * 2 + da, dofof[nb] * 2 + db, v * fdot);
                        }
                }
            }
        }
    };

    // band cells
    for (int i = 0; i + 1 < n_s; ++i) {
        for (int j = 0; j < nth; ++j) {
            const int jp = (j + 1) % nth;
            const int ids[4] = {mesh.node_id(i, j), mesh.node_id(i + 1, j), mesh.node_id(i, jp),
                                mesh.node_id(i + 1, jp)};
            double K[16] = {0}, V[16] = {0}, M[16] = {0};
            for (int qa = 0; qa < 2; ++qa)
                for (int qb = 0; qb < 2; ++qb) {
                    const double u = kG2[qa], t = kG2[qb];
                    const double wq = 0.25 * ds * dth;
                    const double N[4] = {(1 - u) * (1 - t), u * (1 - t), (1 - u) * t, u * t};
                    const double Ns[4] = {-(1 - t) / ds, (1 - t) / ds, -t / ds, t / ds};
                    const double Nt[4] = {-(1 - u) / dth, -u / dth, (1 - u) / dth, u / dth};
                    const double s = mesh.s0 + (i + u) * ds, th = dth * (j + t);
                    const double pv = dens.potential ? dens.potential(s, th) : 0.0;
                    const double mv = dens.mass ? dens.mass(s, th) : 0.0;
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b) {
                            K[a * 4 + b] += wq * (Ns[a] * Ns[b] + Nt[a] * Nt[b]);
                            V[a * 4 + b] += wq * pv * N[a] * N[b];
                            M[a * 4 + b] += wq * mv * N[a] * N[b];
                        }
                }
            scatter(tK, ids, K, 4);
            scatter(tV, ids, V, 4);
            scatter(tM, ids, M, 4);
        }
    }

    // cap fans: local polar chart, radius r0, angular cells of width dth
    auto add_cap = [&](bool inner) {
        const double r0 = inner ? std::exp(mesh.s0) : std::exp(-mesh.s1);
        const int ring = inner ? 0 : n_s - 1;
        const int pole = inner ? mesh.pole_inner_id() : mesh.pole_outer_id();
        const int chart = inner ? 0 : 1;
        for (int j = 0; j < nth; ++j) {
            const int jp = (j + 1) % nth;
            const int ids[3] = {pole, mesh.node_id(ring, j), mesh.node_id(ring, jp)};
            double K[9] = {0}, V[9] = {0}, M[9] = {0};
            // analytic flat stiffness of the fan cell
            K[0 * 3 + 0] = dth / 2;
            K[0 * 3 + 1] = K[1 * 3 + 0] = -dth / 4;
            K[0 * 3 + 2] = K[2 * 3 + 0] = -dth / 4;
            K[1 * 3 + 1] = K[2 * 3 + 2] = dth / 6 + 1.0 / (2 * dth);
            K[1 * 3 + 2] = K[2 * 3 + 1] = dth / 12 - 1.0 / (2 * dth);
            // 3x3-ish Gauss for densities on the degenerate quad
            for (int qa = 0; qa < 2; ++qa)
                for (int qb = 0; qb < 2; ++qb) {
                    const double rho = kG2[qa] * r0;
                    const double tau = kG2[qb];
                    const double wq = 0.25 * r0 * dth * rho;   // rho drho dtheta
                    const double N[3] = {1 - rho / r0, (rho / r0) * (1 - tau), (rho / r0) * tau};
                    // local complex coordinate: theta label j + tau, orientation
                    // flips in the outer chart (w = 1/z conjugates angles)
                    const double th = dth * (j + tau);
                    const Cplx w = std::polar(rho, chart == 0 ? th : -th);
                    const double pv = dens.cap_potential ? dens.cap_potential(chart, w) : 0.0;
                    const double mv = dens.cap_mass ? dens.cap_mass(chart, w) : 0.0;
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b) {
                            V[a * 3 + b] += wq * pv * N[a] * N[b];
                            M[a * 3 + b] += wq * mv * N[a] * N[b];
                        }
                }
            scatter(tK, ids, K, 3);
            scatter(tV, ids, V, 3);
            scatter(tM, ids, M, 3);
        }
    };
    if (mesh.cap_inner) add_cap(true);
    if (mesh.cap_outer) add_cap(false);

    WeightedQuadraticForm form;
    form.dim = dim;
    form.dof = ndof * dim;
    form.stiffness.resize(form.dof, form.dof);
    form.potential.resize(form.dof, form.dof);
    form.mass.resize(form.dof, form.dof);
    form.stiffness.setFromTriplets(tK.begin(), tK.end());
    form.potential.setFromTriplets(tV.begin(), tV.end());
    form.mass.setFromTriplets(tM.begin(), tM.end());
    // exact symmetrization (assembly is symmetric up to round-off)
    form.stiffness = 0.5 * (SpMat(form.stiffness.transpose()) + form.stiffness);
    form.potential = 0.5 * (SpMat(form.potential.transpose()) + form.potential);
    form.mass = 0.5 * (SpMat(form.mass.transpose()) + form.mass);

    form.node_V.reserve(ndof);
    form.node_omega.reserve(ndof);
    for (int id = 0; id < nnodes; ++id) {
        if (dofof[id] < 0) continue;
        form.node_V.push_back(nodeV[id]);
        form.node_omega.push_back(nodeW[id]);
        if (map) {
            form.frame_e1.push_back(e1[id]);
            form.frame_e2.push_back(e2[id]);
            form.node_u.push_back(uval[id]);
        }
    }
    return form;
}

WeightedQuadraticForm assemble_jacobi_annulus(const maps::SphereMapBase& map, double eta,
                                              double delta, int n_s, int n_theta,
                                              const std::function<double(double)>& omega,
                                              double potential_scale) {
    BandMesh mesh{std::log(delta / eta), std::log(eta), n_s, n_theta, false, false};
    const maps::SphereMapBase* mp = &map;
    BandDensities dens;
    dens.potential = [mp, potential_scale](double s, double th) {
        const maps::MapJet mj = mp->eval(std::polar(std::exp(s), th), 0);
        return potential_scale * mj.energy_density() * std::exp(2.0 * s);
    };
    dens.mass = [omega](double s, double) { return omega(std::exp(s)) * std::exp(2.0 * s); };
    return assemble_band(mesh, dens, &map);
}

namespace {
std::function<double(double)> sphere_weight_fn(const SphereWeightSpec& w) {
    switch (w.kind) {
        case SphereWeight::Uniform:
            return [](double) { return 1.0; };
        case SphereWeight::NeckOmega: {
            NeckWeight nw(w.eta, w.delta, w.beta);
            return [nw](double rho) { return nw(rho); };
        }
        case SphereWeight::EtaInfty: {
            const double eta = w.eta, beta = w.beta;
            return [eta, beta](double rho) { return omega_eta_infty(rho, eta, beta); };
        }
        case SphereWeight::BubbleHat: {
            const double eta = w.eta, beta = w.beta;
            // omega_tilde dvol = 4 omega_hat(y) dy^2 in the plane chart
            return [eta, beta](double rho) {
                const double t = 1.0 + rho * rho;
                return omega_hat_infty(rho, eta, beta) * t * t / 4.0;
            };
        }
    }
    return {};
}
} // namespace

WeightedQuadraticForm assemble_jacobi_sphere(const maps::SphereMapBase& map, double s_half,
                                             int n_s, int n_theta, const SphereWeightSpec& w) {
    BandMesh mesh{-s_half, s_half, n_s, n_theta, true, true};
    const maps::SphereMapBase* mp = &map;
    auto omega = sphere_weight_fn(w);
    BandDensities dens;
    dens.potential = [mp](double s, double th) {
        return mp->eval(std::polar(std::exp(s), th), 0).energy_density() * std::exp(2.0 * s);
    };
    dens.mass = [omega](double s, double) {
        const double rho = std::exp(s);
        return omega(rho) * sphere::conformal_factor(Cplx(rho, 0.0)) * std::exp(2.0 * s);
    };
    dens.cap_potential = [mp](int chart, Cplx z) { return mp->eval(z, chart).energy_density(); };
    dens.cap_mass = [omega](int chart, Cplx z) {
        const double rho_chart0 = chart == 0 ? std::abs(z) : 1.0 / std::max(std::abs(z), 1e-300);
        return omega(rho_chart0) * sphere::conformal_factor(z);
    };
    return assemble_band(mesh, dens, &map);
}

WeightedQuadraticForm assemble_jacobi_bubble_sphere(const maps::SphereMapBase& map, double delta,
                                                    double margin, int n_s_per_unit, int n_theta,
                                                    const SphereWeightSpec& w) {
    const double s0 = std::log(delta) - margin, s1 = margin;
    const int n_s = std::max(24, int(std::ceil((s1 - s0) * n_s_per_unit)) + 1);
    BandMesh mesh{s0, s1, n_s, n_theta, true, true};
    const maps::SphereMapBase* mp = &map;
    auto omega = sphere_weight_fn(w);
    BandDensities dens;
    dens.potential = [mp](double s, double th) {
        return mp->eval(std::polar(std::exp(s), th), 0).energy_density() * std::exp(2.0 * s);
    };
    dens.mass = [omega](double s, double) {
        const double rho = std::exp(s);
        return omega(rho) * sphere::conformal_factor(Cplx(rho, 0.0)) * std::exp(2.0 * s);
    };
    dens.cap_potential = [mp](int chart, Cplx z) { return mp->eval(z, chart).energy_density(); };
    dens.cap_mass = [omega](int chart, Cplx z) {
        const double rho_chart0 = chart == 0 ? std::abs(z) : 1.0 / std::max(std::abs(z), 1e-300);
        return omega(rho_chart0) * sphere::conformal_factor(z);
    };
    return assemble_band(mesh, dens, &map);
}

} // namespace hmlab::spectral
