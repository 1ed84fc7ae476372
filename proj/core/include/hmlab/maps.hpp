#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "hmlab/field.hpp"
#include "hmlab/grid.hpp"
#include "hmlab/sphere_grid.hpp"

namespace hmlab::maps {

using sphere::Cplx;
using sphere::Vec3;

/// Value and chart-frame derivative of a sphere-valued map at one point:
/// du[k][0] = d u_k / dx, du[k][1] = d u_k / dy in the chart coordinate.
struct MapJet {
    Vec3 u{};
    double du[3][2]{};
    double energy_density() const {
        double e = 0.0;
        for (int k = 0; k < 3; ++k) e += du[k][0] * du[k][0] + du[k][1] * du[k][1];
        return e;
    }
    /// Hopf density sum_k (d_z u_k)^2 with d_z = (d_x - i d_y)/2.
    Cplx hopf() const {
        Cplx acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const Cplx dz(0.5 * du[k][0], -0.5 * du[k][1]);
            acc += dz * dz;
        }
        return acc;
    }
};

/// Rational function on the sphere given by numerator/denominator
/// coefficients (ascending powers).
struct RationalMapSpec {
    std::vector<Cplx> p{Cplx(0.0), Cplx(1.0)};   // default: z
    std::vector<Cplx> q{Cplx(1.0)};

    int degree() const;
    /// Sylvester-resultant test that p and q share no root.
    void validate() const;
};

class SphereMapBase {
public:
    virtual ~SphereMapBase() = default;
    /// Evaluate at the coordinate z of domain chart 0 (z) or 1 (w = 1/z).
    virtual MapJet eval(Cplx z, int chart) const = 0;
    /// Jet of the target-chart coordinate xi (stereographic coordinate
    /// vanishing at the north pole of the target) when the value is in the
    /// northern chart; returns false otherwise. Used by gluing.
    virtual bool target_chart_jet(Cplx z, int chart, Cplx& xi, Cplx& xi_z, Cplx& xi_zb) const {
        (void)z; (void)chart; (void)xi; (void)xi_z; (void)xi_zb;
        return false;
    }
};

class ConstantMap final : public SphereMapBase {
public:
    explicit ConstantMap(const Vec3& p) : p_(p) {}
    MapJet eval(Cplx, int) const override {
        MapJet j;
        j.u = p_;
        return j;
    }
    bool target_chart_jet(Cplx, int, Cplx& xi, Cplx& xi_z, Cplx& xi_zb) const override;

private:
    Vec3 p_;
};

/// u = sigma(P(z)/Q(z)) with sigma the inverse stereographic projection of
/// the target sphere; exact unit-norm values, analytic derivatives, and a
/// chart swap to the antipodal target chart where |P/Q| > 1.
class RationalSphereMap final : public SphereMapBase {
public:
    explicit RationalSphereMap(RationalMapSpec spec);
    MapJet eval(Cplx z, int chart) const override;
    bool target_chart_jet(Cplx z, int chart, Cplx& xi, Cplx& xi_z, Cplx& xi_zb) const override;
    const RationalMapSpec& spec() const { return spec_; }

private:
    RationalMapSpec spec_;
};

struct GluingProfile {
    /// Fraction of the neck (in s = log r) over which the bubble content is
    /// damped to the background, measured from the inner boundary.
    double width = 1.0;
    /// Smoothstep order of the damping profile: 3, 5 or 7. Higher orders
    /// vanish to higher order at the neck ends, which keeps the glued map
    /// closer to a critical point deep in the ladder.
    int order = 7;
};

/// Bubble glued into a background at the chart-0 origin:
/// u = background outside B_eta, u = bubble((z)/delta) inside B_{delta/eta},
/// and in between the target-chart blend xi = B(s) xi_bubble + (1-B) xi_bg,
/// which for a constant background moves along the geodesic joining the two
/// boundary values. B runs 1 -> 0 with a smoothstep profile in s = log r.
class GluedBubbleMap final : public SphereMapBase {
public:
    GluedBubbleMap(std::shared_ptr<const SphereMapBase> background, RationalMapSpec bubble,
                   double eta, double delta, GluingProfile profile = {});
    MapJet eval(Cplx z, int chart) const override;

    double eta() const { return eta_; }
    double delta() const { return delta_; }

private:
    std::shared_ptr<const SphereMapBase> background_;
    RationalSphereMap bubble_;
    double eta_, delta_;
    GluingProfile profile_;
    double s_in_, s_out_;
};

struct BubbleFamily {
    std::shared_ptr<const SphereMapBase> background;
    RationalMapSpec bubble;
    double eta = 0.1;
    std::vector<double> ladder;   // decreasing deltas, each < eta^2
    GluingProfile profile;

    void validate() const;
    GluedBubbleMap glue(double delta) const;
};

// ---- energies and diagnostics -------------------------------------------

/// Energy of a closed-sphere map by two-chart partition-of-unity quadrature.
double energy(const SphereMapBase& map, const sphere::TwoChartSphereGrid& g);

/// Energy of a bubbling map by composite quadrature on a log-polar band
/// around the bubble plus small cap corrections at both poles.
double energy_composite(const SphereMapBase& map, double delta, int n_s_per_unit = 48,
                        int n_theta = 128);

/// Dyadic ring energies int_{B_{2rho} \ B_rho} |du|^2 for rho = (delta/eta) 2^j
/// inside the neck (last ring clipped at eta), plus their max.
struct NeckProfile {
    std::vector<double> ring_energy;
    double sup = 0.0;
};
NeckProfile neck_energy_profile(const SphereMapBase& map, double eta, double delta,
                                int n_s_per_ring = 32, int n_theta = 96);

/// Limiting average length integrand: int mean_theta |du/dr| dr over the neck.
double average_length(const SphereMapBase& map, double eta, double delta,
                      int n_s_per_unit = 64, int n_theta = 96);

/// Hopf differential in the cylinder normalization z^2 hopf(z), sampled on an
/// annulus grid, and the holomorphicity residual |d_{wbar} (z^2 h)|_{L^2(ds dtheta)}.
struct HopfReport {
    Field re, im;          // cylinder-normalized Hopf coefficient
    double residual = 0.0; // L2(ds dtheta) of the anti-holomorphic derivative
    double norm = 0.0;     // L2(ds dtheta) of the coefficient itself
};
HopfReport hopf_differential(const SphereMapBase& map, const grid::LogPolarGrid& g);

/// Sphere conservation-law residual |div(u^i grad u^j - u^j grad u^i)| in the
/// cylinder normalization, L2(ds dtheta) over the annulus.
double conservation_residual(const SphereMapBase& map, const grid::LogPolarGrid& g);

/// Same residual computed over the closed sphere in chart coordinates with
/// partition-of-unity weights (for maps smooth on the whole sphere).
double conservation_residual(const SphereMapBase& map, const sphere::TwoChartSphereGrid& g);

/// sup over annulus nodes of |x|^2 |du|^2 / ( [ (|x|/eta)^b + (delta/(eta|x|))^b ] E
///   + c / log^2(eta^2/delta) ) with E the energy of the map over A(2 eta, delta).
double pointwise_bound_check(const SphereMapBase& map, double eta, double delta, double beta,
                             double c, int n_s = 192, int n_theta = 96);

/// Nodewise samples of a map on an annulus grid: values, energy density.
struct AnnulusMapSample {
    VectorField values;        // 3 components
    Field energy_density;      // |du|^2 in chart coordinates
};
AnnulusMapSample sample(const SphereMapBase& map, const grid::LogPolarGrid& g);

} // namespace hmlab::maps
