#pragma once

#include <string>
#include <vector>

#include "hmlab/config.hpp"
#include "hmlab/maps.hpp"
#include "hmlab/spectral.hpp"

namespace hmlab::experiments {

/// Per-scale results of the index-plus-nullity tracking along a bubbling
/// ladder, with the diagnostics needed to judge how far the glued map sits
/// from an exact critical point.
struct ScaleResult {
    double delta = 0.0;
    double energy = 0.0;
    double neck_lambda0 = 0.0;
    double mu_ratio = 0.0;
    double avg_length = 0.0;
    double hopf_residual = 0.0;
    double hopf_norm = 0.0;
    double conservation = 0.0;
    double tau = 0.0;
    int index = 0, nullity = 0;
    std::vector<double> eigenvalues;
};

struct IndexStabilityRun {
    config::RunConfig cfg;
    std::vector<ScaleResult> scales;
    int index_background = 0, nullity_background = 0;
    int index_bubble = 0, nullity_bubble = 0;
    std::vector<double> background_eigs, bubble_eigs;
    double background_tau = 0.0, bubble_tau = 0.0;
    bool upper_bound_holds = false;   // Ind+Null(u_k) <= sum of limit budgets
    bool lower_bound_holds = false;   // Ind(limits) <= Ind(u_k)
};

maps::BubbleFamily family_from_config(const config::RunConfig& cfg);

IndexStabilityRun run_index_stability(const config::RunConfig& cfg);

struct NeckSuiteRow {
    double eta = 0.0, delta = 0.0, beta = 0.0;
    double hardy_numeric = 0.0, hardy_analytic = 0.0;
    double inner_lambda1 = 0.0, outer_lambda1 = 0.0;
    double omega_lambda1 = 0.0;
    double neck_lambda0 = 0.0;
    double pointwise_sup = 0.0;
};

std::vector<NeckSuiteRow> run_neck_suite(const config::RunConfig& cfg);

struct WenteBenchRow {
    int mode = 0;
    int scale = 0;       // support radius 2^-scale
    double ratio = 0.0;
    double ratio_refined = 0.0;   // one refinement step
};

std::vector<WenteBenchRow> run_wente_bench(const config::RunConfig& cfg);

struct SeriesCheckResult {
    int instances = 0;
    int violations = 0;
    double worst_slack = 1e300;   // min over instances of rhs - lhs
};

SeriesCheckResult run_series_check(const config::RunConfig& cfg);

} // namespace hmlab::experiments
