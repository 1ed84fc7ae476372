#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <cstdlib>
#include <random>

#include "hmlab/config.hpp"
#include "hmlab/csvio.hpp"
#include "hmlab/experiments.hpp"
#include "hmlab/harmonic.hpp"
#include "hmlab/lorentz.hpp"
#include "hmlab/parallel.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hmlab;

namespace {

struct RunContext {
    config::RunConfig cfg;
    fs::path out;
    json summary;
    bool checks_passed = true;

    void emit_csv(const csvio::Table& t, const std::string& name) {
        const fs::path p = out / name;
        csvio::write(t, p.string());
        summary["outputs"].push_back(p.string());
    }
    void finish() {
        summary["checks_passed"] = checks_passed;
        std::ofstream f(out / "summary.json");
        f << summary.dump(2) << "\n";
    }
};

std::string num(double x) { return csvio::format_number(x); }

int cmd_annulus_spectrum(RunContext& ctx) {
    csvio::Table t;
    t.columns = {"eta", "delta", "beta", "variant", "lambda1_analytic", "lambda1_numeric",
                 "rel_err"};
    const auto& c = ctx.cfg;
    for (double delta : c.deltas) {
        auto hardy =
            spectral::annulus_hardy_eigen(c.eta, delta, spectral::HardyVariant::Hardy, c.beta, c.n_s);
        const double rel =
            std::fabs(hardy.lambda1_numeric / *hardy.lambda1_analytic - 1.0);
        auto& r0 = t.new_row();
        r0 = {num(c.eta), num(delta), num(c.beta), "hardy", num(*hardy.lambda1_analytic),
              num(hardy.lambda1_numeric), num(rel)};
        if (rel > 0.01) ctx.checks_passed = false;
        for (auto [name, variant] :
             {std::pair{"inner", spectral::HardyVariant::Inner},
              std::pair{"outer", spectral::HardyVariant::Outer}}) {
            auto res = spectral::annulus_hardy_eigen(c.eta, delta, variant, c.beta, c.n_s);
            auto& r = t.new_row();
            r = {num(c.eta), num(delta), num(c.beta), name, "", num(res.lambda1_numeric), ""};
        }
        auto& rw = t.new_row();
        rw = {num(c.eta), num(delta), num(c.beta), "omega", "",
              num(spectral::neck_weight_lambda1(c.eta, delta, c.beta, c.n_s)), ""};
    }
    ctx.emit_csv(t, "annulus_spectrum.csv");
    return 0;
}

int cmd_lorentz(RunContext& ctx) {
    csvio::Table t;
    t.columns = {"eta", "delta", "n_s", "n_theta", "field", "l2_weak", "l2", "l21"};
    const auto& c = ctx.cfg;
    for (double delta : c.deltas) {
        grid::LogPolarGrid g(c.eta, delta, c.n_s, c.n_theta);
        Field f = g.sample([](double r, double) { return 1.0 / r; });
        auto rf = lorentz::rearrange(g, f);
        auto& r = t.new_row();
        r = {num(c.eta), num(delta), std::to_string(c.n_s), std::to_string(c.n_theta),
             "grad_log", num(lorentz::l2_weak_quasinorm(rf)), num(lorentz::l2_norm(rf)),
             num(lorentz::l21_norm(rf))};
    }
    ctx.emit_csv(t, "lorentz.csv");
    return 0;
}

int cmd_harmonic_split(RunContext& ctx) {
    const auto& c = ctx.cfg;
    const double delta = c.deltas.front();
    grid::LogPolarGrid g(c.eta, delta, c.n_s, c.n_theta);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    harmonic::AnnulusFourierDecomposition in;
    in.max_mode = std::min(c.max_mode, c.n_theta / 4);
    in.eta = g.eta();
    in.inner_radius = g.inner_radius();
    in.constant = gauss(rng);
    in.log_coeff = gauss(rng);
    for (int n = 1; n <= in.max_mode; ++n) {
        // scale coefficients so every mode carries comparable energy
        in.pos.push_back(sphere::Cplx(gauss(rng), gauss(rng)) * std::pow(g.eta(), -n));
        in.neg.push_back(sphere::Cplx(gauss(rng), gauss(rng)) * std::pow(g.inner_radius(), n));
    }
    Field f = harmonic::synthesize(g, in);
    auto out = harmonic::fourier_split(g, f, in.max_mode);

    csvio::Table t;
    t.columns = {"mode", "in_re", "in_im", "out_re", "out_im", "rel_err", "condition"};
    {
        auto& r = t.new_row();
        const double err = std::fabs(out.constant - in.constant) +
                           std::fabs(out.log_coeff - in.log_coeff);
        r = {"0", num(in.constant), num(in.log_coeff), num(out.constant), num(out.log_coeff),
             num(err), num(out.mode_condition[0])};
    }
    for (int n = 1; n <= in.max_mode; ++n) {
        for (int sgn = 0; sgn < 2; ++sgn) {
            const auto& vin = sgn ? in.neg[n - 1] : in.pos[n - 1];
            const auto& vout = sgn ? out.neg[n - 1] : out.pos[n - 1];
            const double rel = std::abs(vout - vin) / std::max(1e-300, std::abs(vin));
            auto& r = t.new_row();
            r = {std::to_string(sgn ? -n : n), num(vin.real()), num(vin.imag()),
                 num(vout.real()), num(vout.imag()), num(rel), num(out.mode_condition[n])};
            if (rel > 1e-6) ctx.checks_passed = false;
        }
    }
    ctx.emit_csv(t, "harmonic_split.csv");

    csvio::Table t2;
    t2.columns = {"quantity", "value"};
    auto& q1 = t2.new_row();
    q1 = {"bound_ratio_plus", num(harmonic::pointwise_bound_ratio_plus(g, out))};
    auto& q2 = t2.new_row();
    q2 = {"bound_ratio_minus", num(harmonic::pointwise_bound_ratio_minus(g, out))};
    auto& q3 = t2.new_row();
    q3 = {"laplacian_residual", num(out.laplacian_residual)};
    ctx.emit_csv(t2, "harmonic_bounds.csv");
    return 0;
}

int cmd_wente_bench(RunContext& ctx) {
    auto rows = experiments::run_wente_bench(ctx.cfg);
    csvio::Table t;
    t.columns = {"mode", "scale", "ratio", "ratio_refined"};
    double lo = 1e300, hi = 0.0;
    for (const auto& r : rows) {
        auto& row = t.new_row();
        row = {std::to_string(r.mode), std::to_string(r.scale), num(r.ratio),
               num(r.ratio_refined)};
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    ctx.emit_csv(t, "wente_bench.csv");
    ctx.summary["results"]["ratio_min"] = lo;
    ctx.summary["results"]["ratio_max"] = hi;
    return 0;
}

int cmd_series_check(RunContext& ctx) {
    auto res = experiments::run_series_check(ctx.cfg);
    std::cout << "series-check: " << res.instances << " checks, " << res.violations
              << " violations, worst slack " << res.worst_slack << "\n";
    ctx.summary["results"]["instances"] = res.instances;
    ctx.summary["results"]["violations"] = res.violations;
    ctx.summary["results"]["worst_slack"] = res.worst_slack;
    if (res.violations > 0) ctx.checks_passed = false;
    csvio::Table t;
    t.columns = {"instances", "violations", "worst_slack"};
    auto& r = t.new_row();
    r = {std::to_string(res.instances), std::to_string(res.violations), num(res.worst_slack)};
    ctx.emit_csv(t, "series_check.csv");
    return 0;
}

int cmd_index(RunContext& ctx) {
    const auto& c = ctx.cfg;
    std::shared_ptr<maps::SphereMapBase> map;
    if (c.bubble_degree == 0) {
        map = std::make_shared<maps::ConstantMap>(maps::Vec3{0.0, 0.0, 1.0});
    } else {
        maps::RationalMapSpec spec;
        spec.p.assign(c.bubble_degree + 1, 0.0);
        spec.p[c.bubble_degree] = 1.0;
        spec.q = {sphere::Cplx(1.0)};
        map = std::make_shared<maps::RationalSphereMap>(spec);
    }
    spectral::SphereWeightSpec w;   // uniform against dvol
    const int n_s = int(c.sphere_band_per_unit * 2 * c.sphere_margin) + 1;
    auto form = spectral::assemble_jacobi_sphere(*map, c.sphere_margin, n_s, c.sphere_n_theta, w);
    spectral::EigOptions opt;
    opt.count = c.eig_count;
    auto rep = spectral::solve_weighted_eigen(form, opt);
    const double tau = c.tau > 0 ? c.tau : rep.zero_tolerance;
    auto [ind, nul] = spectral::index_nullity(rep, tau);
    csvio::Table t;
    t.columns = {"map_degree", "dof", "tau", "index", "nullity", "lambda1", "residual_max"};
    auto& r = t.new_row();
    double rmax = 0.0;
    for (double x : rep.residuals) rmax = std::max(rmax, x);
    r = {std::to_string(c.bubble_degree), std::to_string(form.dof), num(tau),
         std::to_string(ind), std::to_string(nul), num(rep.eigenvalues[0]), num(rmax)};
    ctx.emit_csv(t, "index.csv");
    csvio::Table te;
    te.columns = {"k", "lambda"};
    for (size_t k = 0; k < rep.eigenvalues.size(); ++k) {
        auto& row = te.new_row();
        row = {std::to_string(k), num(rep.eigenvalues[k])};
    }
    ctx.emit_csv(te, "index_eigenvalues.csv");
    // node table of the analyzed map for external plotting
    csvio::Table tm;
    tm.columns = {"s", "theta", "u1", "u2", "u3", "energy_density"};
    const int ns = 49, nth = 32;
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nth; ++j) {
            const double sc = -c.sphere_margin + 2.0 * c.sphere_margin * i / (ns - 1);
            const double th = 2.0 * 3.14159265358979323846 * j / nth;
            const maps::MapJet mj = map->eval(std::polar(std::exp(sc), th), 0);
            auto& row = tm.new_row();
            row = {num(sc), num(th), num(mj.u[0]), num(mj.u[1]), num(mj.u[2]),
                   num(mj.energy_density())};
        }
    ctx.emit_csv(tm, "map_nodes.csv");
    return 0;
}

int cmd_index_stability(RunContext& ctx) {
    auto run = experiments::run_index_stability(ctx.cfg);
    csvio::Table t;
    t.columns = {"delta",       "energy",      "index", "nullity", "tau",
                 "neck_lambda0", "mu_ratio",    "avg_length", "hopf_residual",
                 "conservation", "sum_counts"};
    for (const auto& s : run.scales) {
        auto& r = t.new_row();
        r = {num(s.delta),        num(s.energy),       std::to_string(s.index),
             std::to_string(s.nullity), num(s.tau),    num(s.neck_lambda0),
             num(s.mu_ratio),     num(s.avg_length),   num(s.hopf_residual),
             num(s.conservation), std::to_string(s.index + s.nullity)};
    }
    ctx.emit_csv(t, "index_stability.csv");

    csvio::Table tl;
    tl.columns = {"side", "index", "nullity", "tau"};
    auto& r1 = tl.new_row();
    r1 = {"background", std::to_string(run.index_background),
          std::to_string(run.nullity_background), num(run.background_tau)};
    auto& r2 = tl.new_row();
    r2 = {"bubble", std::to_string(run.index_bubble), std::to_string(run.nullity_bubble),
          num(run.bubble_tau)};
    ctx.emit_csv(tl, "index_stability_limits.csv");

    for (const auto& s : run.scales) {
        json row;
        row["delta"] = s.delta;
        row["energy"] = s.energy;
        row["index"] = s.index;
        row["nullity"] = s.nullity;
        row["tau"] = s.tau;
        row["neck_lambda0"] = s.neck_lambda0;
        row["mu_ratio"] = s.mu_ratio;
        row["avg_length"] = s.avg_length;
        row["hopf_residual"] = s.hopf_residual;
        row["conservation_residual"] = s.conservation;
        row["eigenvalues"] = s.eigenvalues;
        ctx.summary["results"]["scales"].push_back(row);
    }
    ctx.summary["results"]["background"] = {{"index", run.index_background},
                                            {"nullity", run.nullity_background},
                                            {"eigenvalues", run.background_eigs}};
    ctx.summary["results"]["bubble"] = {{"index", run.index_bubble},
                                        {"nullity", run.nullity_bubble},
                                        {"eigenvalues", run.bubble_eigs}};
    ctx.summary["results"]["upper_bound_holds"] = run.upper_bound_holds;
    ctx.summary["results"]["lower_bound_holds"] = run.lower_bound_holds;
    ctx.summary["results"]["budget"] = run.index_background + run.nullity_background +
                                       run.index_bubble + run.nullity_bubble;
    if (!run.upper_bound_holds || !run.lower_bound_holds) ctx.checks_passed = false;
    std::cout << "index-stability: budget="
              << run.index_background + run.nullity_background + run.index_bubble +
                     run.nullity_bubble
              << " upper=" << (run.upper_bound_holds ? "ok" : "VIOLATED")
              << " lower=" << (run.lower_bound_holds ? "ok" : "VIOLATED") << "\n";
    return 0;
}

int cmd_neck_suite(RunContext& ctx) {
    auto rows = experiments::run_neck_suite(ctx.cfg);
    csvio::Table t;
    t.columns = {"eta",           "delta",        "beta",          "hardy_analytic",
                 "hardy_numeric", "inner_lambda1", "outer_lambda1", "omega_lambda1",
                 "neck_lambda0",  "pointwise_sup"};
    for (const auto& r : rows) {
        auto& row = t.new_row();
        row = {num(r.eta),           num(r.delta),        num(r.beta),
               num(r.hardy_analytic), num(r.hardy_numeric), num(r.inner_lambda1),
               num(r.outer_lambda1), num(r.omega_lambda1), num(r.neck_lambda0),
               num(r.pointwise_sup)};
    }
    ctx.emit_csv(t, "neck_suite.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for harmonic-map bubbling spectra"};
    std::string config_path, out_dir, subcommand_flag;
    std::uint64_t seed = 0;
    int threads = 0;
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--threads", threads, "worker threads (overrides config)");
    app.add_option("--seed", seed, "random seed (overrides config)");
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "cannot open config file " << config_path << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << f.rdbuf();
        RunContext ctx;
        ctx.cfg = config::parse_config(ss.str());
        if (!out_dir.empty()) ctx.cfg.out_dir = out_dir;
        if (const char* envt = std::getenv("HMLAB_THREADS"))
            ctx.cfg.threads = std::max(1, std::atoi(envt));
        if (threads > 0) ctx.cfg.threads = threads;
        if (seed > 0) ctx.cfg.seed = seed;
        ctx.out = ctx.cfg.out_dir;
        fs::create_directories(ctx.out);
        ctx.summary["config_text"] = config::to_text(ctx.cfg);
        ctx.summary["subcommand"] = ctx.cfg.subcommand;
        ctx.summary["outputs"] = json::array();

        int rc = 0;
        const std::string& sc = ctx.cfg.subcommand;
        if (sc == "annulus-spectrum")
            rc = cmd_annulus_spectrum(ctx);
        else if (sc == "lorentz")
            rc = cmd_lorentz(ctx);
        else if (sc == "harmonic-split")
            rc = cmd_harmonic_split(ctx);
        else if (sc == "wente-bench")
            rc = cmd_wente_bench(ctx);
        else if (sc == "series-check")
            rc = cmd_series_check(ctx);
        else if (sc == "index")
            rc = cmd_index(ctx);
        else if (sc == "index-stability")
            rc = cmd_index_stability(ctx);
        else if (sc == "neck-suite")
            rc = cmd_neck_suite(ctx);
        else {
            std::cerr << "unknown subcommand '" << sc << "'\n";
            return 2;
        }
        ctx.finish();
        if (rc != 0) return rc;
        return ctx.checks_passed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
