// zerocorr command-line front end.  Wires the shared-library C API into
// reproducible experiments with machine-readable output: CSV for tables
// (with '#'-prefixed metadata), JSON for configs and summaries.
//
// Exit codes: 0 success, 2 config validation, 3 numerical non-convergence,
// 4 statistical self-test failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zerocorr.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitSelfTest = 4;

class cli_error : public std::runtime_error {
  public:
    cli_error(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

  private:
    int code_;
};

void check(zc_status status) {
    if (status == ZC_OK) return;
    const std::string message =
        std::string(zc_status_name(status)) + ": " + zc_last_error();
    if (status == ZC_ERR_NO_CONVERGENCE) throw cli_error(kExitNoConvergence, message);
    throw cli_error(kExitConfig, message);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Grid spec: "start:stop:step" (inclusive endpoints to half a step) or a
// comma-separated list; empty string means an empty grid.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.empty()) return out;
    if (spec.find(':') != std::string::npos) {
        double start, stop, step;
        char c1, c2;
        std::istringstream in(spec);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw cli_error(kExitConfig, "bad grid spec '" + spec + "' (want start:stop:step)");
        for (double v = start; v <= stop + 0.5 * step; v += step) out.push_back(v);
        return out;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

// Writes the '#' metadata block, the header row, then data rows.
struct Table {
    std::vector<std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os) const {
        for (const auto& m : meta) os << "# " << m << "\n";
        for (size_t i = 0; i < columns.size(); ++i)
            os << columns[i] << (i + 1 < columns.size() ? "," : "");
        os << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "");
            os << "\n";
        }
    }
};

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw cli_error(kExitConfig, "cannot open output file " + out_path);
    f << payload;
}

// Effective option resolution: CLI flag > JSON config file > built-in default.
struct OptionSource {
    ordered_json config;

    template <class T>
    T pick(const std::optional<T>& flag, const char* key, T fallback) const {
        if (flag) return *flag;
        if (config.contains(key)) return config[key].get<T>();
        return fallback;
    }
};

OptionSource load_config(const std::optional<std::string>& path) {
    OptionSource src;
    src.config = ordered_json::object();
    if (path) {
        std::ifstream f(*path);
        if (!f) throw cli_error(kExitConfig, "cannot open config file " + *path);
        try {
            f >> src.config;
        } catch (const std::exception& e) {
            throw cli_error(kExitConfig, std::string("bad config JSON: ") + e.what());
        }
    }
    return src;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct CommonFlags {
    std::optional<int> m, degree, workers;
    std::optional<uint64_t> samples, seed;
    std::optional<double> radius;
    std::optional<std::string> bins, grid, config;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--m", f.m, "complex dimension m");
    cmd->add_option("--degree", f.degree, "polynomial degree N");
    cmd->add_option("--samples", f.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", f.seed, "RNG seed");
    cmd->add_option("--radius", f.radius, "window / grid radius");
    cmd->add_option("--bins", f.bins, "bin edges: lo:hi:width or comma list");
    cmd->add_option("--grid", f.grid, "grid: start:stop:step, comma list, or step");
    cmd->add_option("--config", f.config, "JSON config file (flags override)");
    cmd->add_option("--out", f.out, "output file (default: stdout)");
    cmd->add_option("--workers", f.workers,
                    "worker threads (default: ZEROCORR_WORKERS env, else hardware)");
}

// ---- theory-curve ------------------------------------------------------

int run_theory_curve(const CommonFlags& f) {
    const auto src = load_config(f.config);
    const int m = src.pick(f.m, "m", 1);
    const std::string grid_spec = src.pick(f.grid, "grid", std::string("0.1:3.0:0.1"));
    const auto grid = parse_grid(grid_spec);

    ordered_json cfg{{"command", "theory-curve"}, {"m", m}, {"grid", grid_spec}};
    Table table;
    table.meta.push_back(zc_version());
    table.meta.push_back("config: " + cfg.dump());
    double atom = 0.0;
    check(zc_pair_diagonal_atom(m, &atom));
    if (atom > 0.0)
        table.meta.push_back(
            "diagonal atom: self-pair mass " + fmt17(atom) +
            " per unit density^2 at r = 0 (m = 1); not part of the tabulated values");
    table.columns = {"r", "value", "std_error"};
    for (double r : grid) {
        double v = 0.0;
        check(zc_limit_pair_density(m, r, &v));
        table.rows.push_back({fmt17(r), fmt17(v), fmt17(0.0)});
    }
    std::ostringstream os;
    table.write(os);
    emit(f.out, os.str());
    return kExitOk;
}

// ---- empirical-pc ------------------------------------------------------

int run_empirical_pc(const CommonFlags& f) {
    const auto src = load_config(f.config);
    const int m = src.pick(f.m, "m", 1);
    if (m != 1) throw cli_error(kExitConfig, "empirical-pc: only m = 1 is supported");
    const int degree = src.pick(f.degree, "degree", 500);
    const uint64_t samples = src.pick<uint64_t>(f.samples, "samples", 10000);
    const uint64_t seed = src.pick<uint64_t>(f.seed, "seed", 42);
    const double radius = src.pick(f.radius, "radius", 5.0);
    const int workers = src.pick(f.workers, "workers", 0);
    const std::string bins_spec = src.pick(f.bins, "bins", std::string("0.1:3.1:0.2"));
    const auto edges = parse_grid(bins_spec);
    if (samples == 0) throw cli_error(kExitConfig, "empirical-pc: samples must be >= 1");
    if (edges.size() < 2) throw cli_error(kExitConfig, "empirical-pc: need at least one bin");

    zc_point_sets* sets = zc_point_sets_create();
    if (!sets) throw cli_error(kExitConfig, "out of memory");
    struct Guard {
        zc_point_sets* s;
        zc_curve* c = nullptr;
        ~Guard() {
            zc_point_sets_destroy(s);
            zc_curve_destroy(c);
        }
    } guard{sets};

    check(zc_point_sets_sample_scaled_roots(sets, degree, samples, seed, radius, workers));
    check(zc_pair_correlation(sets, radius, edges.data(), edges.size(), workers, &guard.c));

    double density = 0.0;
    check(zc_curve_density(guard.c, &density));

    ordered_json cfg{{"command", "empirical-pc"}, {"m", m},         {"degree", degree},
                     {"samples", samples},        {"seed", seed},   {"radius", radius},
                     {"bins", bins_spec},         {"workers", 0 /* free parameter */}};
    Table table;
    table.meta.push_back(zc_version());
    table.meta.push_back("config: " + cfg.dump());
    table.meta.push_back("density_estimate: " + fmt17(density));
    double atom = 0.0;
    check(zc_pair_diagonal_atom(m, &atom));
    table.meta.push_back("diagonal atom: self-pairs excluded by construction (mass " +
                         fmt17(atom) + " per unit density^2)");
    const size_t n_bins = zc_curve_size(guard.c);
    for (size_t b = 0; b < n_bins; ++b) {
        uint64_t pairs = 0;
        int32_t empty = 0;
        check(zc_curve_pairs(guard.c, b, &pairs, &empty));
        if (empty)
            table.meta.push_back("warning: empty bin [" + fmt17(edges[b]) + "," +
                                 fmt17(edges[b + 1]) + ")");
    }
    table.columns = {"r", "g_hat", "std_error", "pairs", "theory"};
    for (size_t b = 0; b < n_bins; ++b) {
        double r = 0, v = 0, se = 0, theory = 0;
        uint64_t pairs = 0;
        int32_t empty = 0;
        check(zc_curve_row(guard.c, b, &r, &v, &se));
        check(zc_curve_pairs(guard.c, b, &pairs, &empty));
        check(zc_limit_pair_density(m, r, &theory));
        table.rows.push_back(
            {fmt17(r), fmt17(v), fmt17(se), std::to_string(pairs), fmt17(theory)});
    }
    std::ostringstream os;
    table.write(os);
    emit(f.out, os.str());
    return kExitOk;
}

// ---- szego-check --------------------------------------------------------

int run_szego_check(const CommonFlags& f, const std::string& degree_list) {
    const auto src = load_config(f.config);
    const int m = src.pick(f.m, "m", 1);
    const double radius = src.pick(f.radius, "radius", 2.0);
    const int workers = src.pick(f.workers, "workers", 0);
    std::string degrees_spec = degree_list;
    if (degrees_spec.empty() && src.config.contains("degrees"))
        degrees_spec = src.config["degrees"].get<std::string>();
    if (degrees_spec.empty()) degrees_spec = "25,100,400,1600";
    const auto degrees = parse_int_list(degrees_spec);
    if (degrees.empty()) throw cli_error(kExitConfig, "szego-check: no degrees given");
    double step = 0.25;
    const std::string grid_spec = src.pick(f.grid, "grid", std::string("0.25"));
    try {
        step = std::stod(grid_spec);
    } catch (...) {
        throw cli_error(kExitConfig, "szego-check: --grid must be a single step value");
    }

    std::vector<double> errors;
    for (int n : degrees) {
        double e = 0.0;
        check(zc_szego_scaling_error(m, n, radius, step, workers, &e));
        errors.push_back(e);
    }

    ordered_json cfg{{"command", "szego-check"},
                     {"m", m},
                     {"degrees", degrees_spec},
                     {"radius", radius},
                     {"grid", grid_spec}};
    Table table;
    table.meta.push_back(zc_version());
    table.meta.push_back("config: " + cfg.dump());
    if (degrees.size() >= 2) {
        std::vector<double> ns(degrees.begin(), degrees.end());
        table.meta.push_back("loglog_slope: " + fmt17(loglog_slope(ns, errors)));
    }
    table.columns = {"N", "sup_error"};
    for (size_t i = 0; i < degrees.size(); ++i)
        table.rows.push_back({std::to_string(degrees[i]), fmt17(errors[i])});
    std::ostringstream os;
    table.write(os);
    emit(f.out, os.str());
    return kExitOk;
}

// ---- gn ------------------------------------------------------------------

std::vector<double> parse_complex_matrix(const ordered_json& node, size_t& rows, size_t& cols) {
    if (!node.is_array() || node.empty())
        throw cli_error(kExitConfig, "gn: matrix must be a non-empty array of rows");
    rows = node.size();
    cols = 0;
    std::vector<double> flat;
    for (const auto& row : node) {
        if (!row.is_array()) throw cli_error(kExitConfig, "gn: each matrix row must be an array");
        if (cols == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw cli_error(kExitConfig, "gn: ragged matrix rows");
        for (const auto& entry : row) {
            if (entry.is_number()) {
                flat.push_back(entry.get<double>());
                flat.push_back(0.0);
            } else if (entry.is_array() && entry.size() == 2) {
                flat.push_back(entry[0].get<double>());
                flat.push_back(entry[1].get<double>());
            } else {
                throw cli_error(kExitConfig, "gn: entries must be numbers or [re, im] pairs");
            }
        }
    }
    return flat;
}

int run_gn(const CommonFlags& f) {
    const auto src = load_config(f.config);
    const uint64_t samples = src.pick<uint64_t>(f.samples, "samples", 1000000);
    const uint64_t seed = src.pick<uint64_t>(f.seed, "seed", 1);
    const int workers = src.pick(f.workers, "workers", 0);
    if (samples == 0) throw cli_error(kExitConfig, "gn: samples must be >= 1");

    const bool has_gram = src.config.contains("gram");
    const bool has_vectors = src.config.contains("vectors");
    if (has_gram == has_vectors)
        throw cli_error(kExitConfig,
                        "gn: config must provide exactly one of \"gram\" or \"vectors\"");

    ordered_json summary;
    summary["version"] = zc_version();
    zc_mc_estimate estimate{};
    size_t n = 0;
    std::optional<double> quad_cos;

    if (has_gram) {
        size_t rows = 0, cols = 0;
        const auto gram = parse_complex_matrix(src.config["gram"], rows, cols);
        if (rows != cols) throw cli_error(kExitConfig, "gn: gram matrix must be square");
        n = rows;
        std::vector<double> xi(gram.size(), 0.0);
        check(zc_gram_to_xi(static_cast<int32_t>(n), gram.data(), xi.data()));
        ordered_json xi_json = ordered_json::array();
        for (size_t j = 0; j < n; ++j) {
            ordered_json row = ordered_json::array();
            for (size_t k = 0; k < n; ++k)
                row.push_back({xi[2 * (j * n + k)], xi[2 * (j * n + k) + 1]});
            xi_json.push_back(row);
        }
        summary["xi"] = xi_json;
        check(zc_gn_monte_carlo(static_cast<int32_t>(n), xi.data(), samples, seed, workers,
                                &estimate));
        if (n == 2)
            quad_cos = std::hypot(gram[2 * 2], gram[2 * 2 + 1]);  // |g_{21}|
    } else {
        size_t rows = 0, cols = 0;
        const auto vectors = parse_complex_matrix(src.config["vectors"], rows, cols);
        n = rows;
        check(zc_g_full_mc(static_cast<int32_t>(rows), static_cast<int32_t>(cols),
                           vectors.data(), samples, seed, workers, &estimate));
        if (n == 2) {
            double re = 0, im = 0;
            for (size_t i = 0; i < cols; ++i) {
                const double ar = vectors[2 * i], ai = vectors[2 * i + 1];
                const double br = vectors[2 * (cols + i)], bi = vectors[2 * (cols + i) + 1];
                re += ar * br + ai * bi;
                im += ai * br - ar * bi;
            }
            quad_cos = std::hypot(re, im);
        }
    }

    ordered_json cfg{{"command", "gn"}, {"samples", samples}, {"seed", seed}};
    if (f.config) cfg["config_file"] = *f.config;
    summary["config"] = cfg;
    summary["estimate"] = {{"value", estimate.value},
                           {"std_error", estimate.std_error},
                           {"samples", estimate.samples},
                           {"seed", estimate.seed}};
    if (quad_cos) {
        const double c = std::min(1.0, *quad_cos);
        double ref = 0.0, err = 0.0;
        check(zc_g2_quadrature(c, 1e-10, &ref, &err));
        summary["quadrature_reference"] = {{"cos_theta", c}, {"value", ref}};
    }
    emit(f.out, summary.dump(2) + "\n");
    return kExitOk;
}

// ---- self-test ------------------------------------------------------------

int run_self_test(const CommonFlags& f) {
    const auto src = load_config(f.config);
    const uint64_t seed = src.pick<uint64_t>(f.seed, "seed", 7);
    const int workers = src.pick(f.workers, "workers", 0);
    int failures = 0;
    auto report = [&](const char* name, bool pass, const std::string& detail) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        if (!pass) ++failures;
    };

    {  // closed-form degeneration: gamma_1 == hannay_h
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = 1e-2 * std::pow(5000.0, i / 200.0);
            double h = 0, g = 0;
            check(zc_hannay_h(t, &h));
            check(zc_gamma_m(1, t, &g));
            worst = std::max(worst, std::fabs(h - g));
        }
        report("gamma_1 equals hannay_h", worst <= 1e-12, "max |diff| = " + fmt17(worst));
    }
    {  // bilaplacian identity
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double r = 0.05 + (5.0 - 0.05) * i / 200.0;
            double b = 0, h = 0;
            check(zc_bilaplacian_g(r, &b));
            check(zc_hannay_h(0.5 * r * r, &h));
            worst = std::max(worst, std::fabs(1.0 + 0.25 * b - h));
        }
        report("bilaplacian consistency", worst <= 1e-10, "max |diff| = " + fmt17(worst));
    }
    {  // quadrature oracles
        double g1 = 0, g0 = 0;
        check(zc_g2_quadrature(1.0, 1e-10, &g1, nullptr));
        check(zc_g2_quadrature(0.0, 1e-10, &g0, nullptr));
        const double e1 = std::fabs(g1 - 0.49452799766398628);
        const double e0 = std::fabs(g0 - 0.08329448095192967);
        report("g2 quadrature oracles", e1 <= 1e-8 && e0 <= 1e-8,
               "errors " + fmt17(e1) + ", " + fmt17(e0));
    }
    {  // CSR calibration: Poisson input must give g == 1 per bin
        zc_point_sets* sets = zc_point_sets_create();
        zc_curve* curve = nullptr;
        const double radius = 5.0;
        check(zc_point_sets_sample_poisson(sets, 0.3183098861837907, 4000, seed, radius));
        std::vector<double> edges;
        for (double e = 0.2; e <= 3.01; e += 0.2) edges.push_back(e);
        check(zc_pair_correlation(sets, radius, edges.data(), edges.size(), workers, &curve));
        double worst_z = 0.0;
        for (size_t b = 0; b < zc_curve_size(curve); ++b) {
            double r = 0, v = 0, se = 0;
            check(zc_curve_row(curve, b, &r, &v, &se));
            if (se > 0) worst_z = std::max(worst_z, std::fabs(v - 1.0) / se);
        }
        zc_curve_destroy(curve);
        zc_point_sets_destroy(sets);
        report("estimator calibration (CSR)", worst_z <= 3.0,
               "worst |z| = " + fmt17(worst_z));
    }
    {  // scaled zero density approaches 1/pi
        zc_point_sets* sets = zc_point_sets_create();
        check(zc_point_sets_sample_scaled_roots(sets, 200, 400, seed + 1, 1.5, workers));
        zc_mc_estimate density{};
        check(zc_density_estimate(sets, 1.5, &density));
        zc_point_sets_destroy(sets);
        const double target = 0.3183098861837907;
        const bool pass = std::fabs(density.value - target) <= 3.0 * density.std_error;
        report("scaled zero density", pass,
               "density = " + fmt17(density.value) + " +- " + fmt17(density.std_error) +
                   " vs 1/pi = " + fmt17(target));
    }

    std::cout << (failures == 0 ? "self-test passed\n"
                                : "self-test failed (" + std::to_string(failures) + ")\n");
    return failures == 0 ? kExitOk : kExitSelfTest;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal scaling limits of Gaussian polynomial zero correlations"};
    app.require_subcommand(1);

    CommonFlags theory_flags, empirical_flags, szego_flags, gn_flags, self_flags;
    std::string szego_degrees;

    auto* theory = app.add_subcommand("theory-curve", "closed-form limit pair correlation");
    add_common(theory, theory_flags);
    auto* empirical =
        app.add_subcommand("empirical-pc", "empirical pair correlation of scaled zeros");
    add_common(empirical, empirical_flags);
    auto* szego = app.add_subcommand("szego-check", "kernel scaling-error decay in N");
    add_common(szego, szego_flags);
    szego->add_option("--degrees", szego_degrees, "comma-separated degree list");
    auto* gn = app.add_subcommand("gn", "Gaussian log-modulus integral of a configuration");
    add_common(gn, gn_flags);
    auto* self = app.add_subcommand("self-test", "statistical calibration checks");
    add_common(self, self_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (theory->parsed()) return run_theory_curve(theory_flags);
        if (empirical->parsed()) return run_empirical_pc(empirical_flags);
        if (szego->parsed()) return run_szego_check(szego_flags, szego_degrees);
        if (gn->parsed()) return run_gn(gn_flags);
        if (self->parsed()) return run_self_test(self_flags);
    } catch (const cli_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
