#include "hmlab/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hmlab::config {

namespace {

struct Errors {
    std::vector<std::string> list;
    void add(const std::string& e) { list.push_back(e); }
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::istringstream is(v);
    std::vector<double> out;
    double x;
    while (is >> x) out.push_back(x);
    if (!is.eof()) throw std::runtime_error("not a number list");
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    Errors err;

    using Setter = std::function<void(const std::string&)>;
    std::map<std::string, Setter> schema;
    auto num = [&err](const std::string& key, double lo, double hi, auto assign) {
        return [key, lo, hi, assign, &err](const std::string& v) {
            try {
                size_t pos = 0;
                const double x = std::stod(v, &pos);
                if (pos != v.size()) throw std::runtime_error("");
                if (!(x >= lo && x <= hi)) {
                    std::ostringstream os;
                    os << key << " = " << v << " outside [" << lo << ", " << hi << "]";
                    err.add(os.str());
                    return;
                }
                assign(x);
            } catch (...) {
                err.add(key + " = '" + v + "' is not a number");
            }
        };
    };
    auto intg = [&err](const std::string& key, long lo, long hi, auto assign) {
        return [key, lo, hi, assign, &err](const std::string& v) {
            try {
                size_t pos = 0;
                const long x = std::stol(v, &pos);
                if (pos != v.size()) throw std::runtime_error("");
                if (x < lo || x > hi) {
                    std::ostringstream os;
                    os << key << " = " << v << " outside [" << lo << ", " << hi << "]";
                    err.add(os.str());
                    return;
                }
                assign(x);
            } catch (...) {
                err.add(key + " = '" + v + "' is not an integer");
            }
        };
    };
    auto list = [&err](const std::string& key, auto assign) {
        return [key, assign, &err](const std::string& v) {
            try {
                auto xs = parse_list(v);
                if (xs.empty()) throw std::runtime_error("");
                assign(xs);
            } catch (...) {
                err.add(key + " = '" + v + "' is not a space-separated number list");
            }
        };
    };

    schema["run.subcommand"] = [&](const std::string& v) { c.subcommand = v; };
    schema["run.out_dir"] = [&](const std::string& v) { c.out_dir = v; };
    schema["run.seed"] = intg("run.seed", 0, long(1) << 62, [&](long x) { c.seed = x; });
    schema["run.threads"] = intg("run.threads", 1, 512, [&](long x) { c.threads = int(x); });

    schema["annulus.eta"] = num("annulus.eta", 1e-6, 1e6, [&](double x) { c.eta = x; });
    schema["annulus.deltas"] = list("annulus.deltas", [&](auto xs) { c.deltas = xs; });
    schema["annulus.beta"] = num("annulus.beta", 1e-9, 1.0 - 1e-9, [&](double x) { c.beta = x; });
    schema["annulus.n_s"] = intg("annulus.n_s", 8, 100000, [&](long x) { c.n_s = int(x); });
    schema["annulus.n_theta"] =
        intg("annulus.n_theta", 1, 4096, [&](long x) { c.n_theta = int(x); });

    schema["family.eta"] = num("family.eta", 1e-4, 0.999, [&](double x) { c.family_eta = x; });
    schema["family.ladder"] = list("family.ladder", [&](auto xs) { c.ladder = xs; });
    schema["family.profile_width"] =
        num("family.profile_width", 1e-3, 1.0, [&](double x) { c.profile_width = x; });
    schema["family.profile_order"] =
        intg("family.profile_order", 3, 7, [&](long x) { c.profile_order = int(x); });
    schema["family.bubble_degree"] =
        intg("family.bubble_degree", 0, 8, [&](long x) { c.bubble_degree = int(x); });

    schema["spectral.tau"] = num("spectral.tau", -1.0, 1e6, [&](double x) { c.tau = x; });
    schema["spectral.eig_count"] =
        intg("spectral.eig_count", 2, 400, [&](long x) { c.eig_count = int(x); });
    schema["spectral.sphere_n_theta"] =
        intg("spectral.sphere_n_theta", 8, 1024, [&](long x) { c.sphere_n_theta = int(x); });
    schema["spectral.sphere_band_per_unit"] = intg("spectral.sphere_band_per_unit", 2, 256,
                                                   [&](long x) { c.sphere_band_per_unit = int(x); });
    schema["spectral.sphere_margin"] =
        num("spectral.sphere_margin", 1.0, 16.0, [&](double x) { c.sphere_margin = x; });

    schema["wente.n_r"] = intg("wente.n_r", 16, 1 << 20, [&](long x) { c.wente_n_r = int(x); });
    schema["wente.n_theta"] =
        intg("wente.n_theta", 8, 4096, [&](long x) { c.wente_n_theta = int(x); });
    schema["wente.mode_max"] =
        intg("wente.mode_max", 1, 512, [&](long x) { c.wente_mode_max = int(x); });
    schema["wente.scale_min"] =
        intg("wente.scale_min", 1, 30, [&](long x) { c.wente_scale_min = int(x); });
    schema["wente.scale_max"] =
        intg("wente.scale_max", 1, 30, [&](long x) { c.wente_scale_max = int(x); });

    schema["series.mu"] = num("series.mu", 1e-9, 1.0 - 1e-9, [&](double x) { c.mu = x; });
    schema["series.gamma"] = num("series.gamma", 1e-9, 1.0 - 1e-9, [&](double x) { c.gamma = x; });
    schema["series.eps0"] = num("series.eps0", 0.0, 1e6, [&](double x) { c.eps0 = x; });
    schema["series.instances"] =
        intg("series.instances", 1, 10000000, [&](long x) { c.instances = int(x); });

    schema["harmonic.max_mode"] =
        intg("harmonic.max_mode", 1, 1024, [&](long x) { c.max_mode = int(x); });

    std::istringstream is(text);
    std::string line, section;
    std::map<std::string, int> seen;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                err.add("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) {
            err.add("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = section + "." + trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (seen.count(key)) {
            err.add("duplicate key '" + key + "' (lines " + std::to_string(seen[key]) + " and " +
                    std::to_string(lineno) + ")");
            continue;
        }
        seen[key] = lineno;
        auto it = schema.find(key);
        if (it == schema.end()) {
            err.add("unknown key '" + key + "'");
            continue;
        }
        it->second(val);
    }

    // cross-field domains
    for (double d : c.deltas)
        if (!(d > 0.0) || !(d < c.eta * c.eta))
            err.add("annulus.deltas: every delta must satisfy 0 < delta < eta^2 = " +
                    std::to_string(c.eta * c.eta));
    for (double d : c.ladder)
        if (!(d > 0.0) || d > c.family_eta * c.family_eta)
            err.add("family.ladder: entries must satisfy 0 < delta <= eta^2 = " +
                    std::to_string(c.family_eta * c.family_eta));
    for (size_t i = 1; i < c.ladder.size(); ++i)
        if (c.ladder[i] >= c.ladder[i - 1]) {
            err.add("family.ladder: entries must be strictly decreasing");
            break;
        }
    if (c.wente_scale_min > c.wente_scale_max)
        err.add("wente.scale_min must not exceed wente.scale_max");
    if (c.profile_order != 3 && c.profile_order != 5 && c.profile_order != 7)
        err.add("family.profile_order must be 3, 5 or 7");
    if (c.subcommand.empty()) err.add("run.subcommand is required");

    if (!err.list.empty()) {
        std::string msg = "configuration errors:";
        for (const auto& e : err.list) msg += "\n  - " + e;
        throw std::runtime_error(msg);
    }
    return c;
}

std::string to_text(const RunConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "[run]\nsubcommand = " << c.subcommand << "\nout_dir = " << c.out_dir
       << "\nseed = " << c.seed << "\nthreads = " << c.threads << "\n";
    os << "[annulus]\neta = " << c.eta << "\ndeltas =";
    for (double d : c.deltas) os << " " << d;
    os << "\nbeta = " << c.beta << "\nn_s = " << c.n_s << "\nn_theta = " << c.n_theta << "\n";
    os << "[family]\neta = " << c.family_eta << "\nladder =";
    for (double d : c.ladder) os << " " << d;
    os << "\nprofile_width = " << c.profile_width << "\nprofile_order = " << c.profile_order
       << "\nbubble_degree = " << c.bubble_degree << "\n";
    os << "[spectral]\ntau = " << c.tau << "\neig_count = " << c.eig_count
       << "\nsphere_n_theta = " << c.sphere_n_theta
       << "\nsphere_band_per_unit = " << c.sphere_band_per_unit
       << "\nsphere_margin = " << c.sphere_margin << "\n";
    os << "[wente]\nn_r = " << c.wente_n_r << "\nn_theta = " << c.wente_n_theta
       << "\nmode_max = " << c.wente_mode_max << "\nscale_min = " << c.wente_scale_min
       << "\nscale_max = " << c.wente_scale_max << "\n";
    os << "[series]\nmu = " << c.mu << "\ngamma = " << c.gamma << "\neps0 = " << c.eps0
       << "\ninstances = " << c.instances << "\n";
    os << "[harmonic]\nmax_mode = " << c.max_mode << "\n";
    return os.str();
}

} // namespace hmlab::config
