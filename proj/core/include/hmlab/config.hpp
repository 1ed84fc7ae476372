#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hmlab::config {

/// Validated run configuration shared by every CLI subcommand. Parsed from a
/// sectioned key-value text file; unknown keys, duplicate keys and
/// out-of-domain values are all collected and reported together.
struct RunConfig {
    // [run]
    std::string subcommand;
    std::string out_dir = ".";
    std::uint64_t seed = 12345;
    int threads = 1;

    // [annulus]
    double eta = 1.0;
    std::vector<double> deltas{2.0e-2};
    double beta = 0.5;
    int n_s = 512;
    int n_theta = 64;

    // [family]
    double family_eta = 0.11;
    std::vector<double> ladder{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double profile_width = 1.0;
    int profile_order = 7;
    int bubble_degree = 1;

    // [spectral]
    double tau = -1.0;        // <0: automatic policy
    int eig_count = 26;
    int sphere_n_theta = 64;
    int sphere_band_per_unit = 14;
    double sphere_margin = 4.2;

    // [wente]
    int wente_n_r = 2048;
    int wente_n_theta = 128;
    int wente_mode_max = 16;
    int wente_scale_min = 2;
    int wente_scale_max = 7;

    // [series]
    double mu = 0.5;
    double gamma = 0.25;
    double eps0 = 0.05;
    int instances = 1000;

    // [harmonic]
    int max_mode = 8;
};

/// Parse and validate; throws std::runtime_error whose message lists every
/// violation (parameter name and allowed range) found in the text.
RunConfig parse_config(const std::string& text);

/// Round-trip serialization of a config (used by the JSON summary and tests).
std::string to_text(const RunConfig& c);

} // namespace hmlab::config
