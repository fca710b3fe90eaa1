// Command-line front end: simulate / analytic / sweep / energy / compare.
// Exit codes: 0 success, 2 user or config error, 3 numerical self-check failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "qwalk/analysis.hpp"
#include "qwalk/analytic.hpp"
#include "qwalk/ensemble.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/io.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qwalk;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

struct RunConfig {
    std::string protocol = "swapped";  // original | swapped | lightshift-raw | custom
    double k = 1.45;
    double tau = 4.0 * std::numbers::pi;
    int steps = 15;
    std::vector<int> classes = {0, 1};
    double fwhm = 0.0;
    int n_samples = 1;
    std::uint64_t seed = 42;
    double thermal_fraction = 0.0;
    double chi = std::numbers::pi;  // lightshift-raw compensation phase
    int workers = 1;
    std::string out = "out";
    bool write_betas = false;
    // custom protocol knobs
    double init_alpha = std::numbers::pi / 2.0;
    double init_chi = -std::numbers::pi / 2.0;
    double step_alpha = std::numbers::pi / 2.0;
    double step_chi = 0.0;
    bool light_shift = false;
    bool coin_after_kick = false;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void load_config_file(const fs::path& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    const auto get = [&doc](const char* key, auto& slot) {
        if (doc.contains(key)) slot = doc[key].get<std::decay_t<decltype(slot)>>();
    };
    get("protocol", cfg.protocol);
    get("k", cfg.k);
    get("tau", cfg.tau);
    get("steps", cfg.steps);
    get("classes", cfg.classes);
    get("fwhm", cfg.fwhm);
    get("n_samples", cfg.n_samples);
    get("seed", cfg.seed);
    get("thermal_fraction", cfg.thermal_fraction);
    get("chi", cfg.chi);
    get("workers", cfg.workers);
    get("out", cfg.out);
    get("write_betas", cfg.write_betas);
    get("init_alpha", cfg.init_alpha);
    get("init_chi", cfg.init_chi);
    get("step_alpha", cfg.step_alpha);
    get("step_chi", cfg.step_chi);
    get("light_shift", cfg.light_shift);
    get("coin_after_kick", cfg.coin_after_kick);
}

void validate(const RunConfig& cfg) {
    if (cfg.protocol != "original" && cfg.protocol != "swapped" &&
        cfg.protocol != "lightshift-raw" && cfg.protocol != "custom")
        throw ConfigError("protocol: unknown name '" + cfg.protocol + "'");
    if (!std::isfinite(cfg.k) || cfg.k < 0.0) throw ConfigError("k: must be finite and >= 0");
    if (!std::isfinite(cfg.tau) || cfg.tau <= 0.0) throw ConfigError("tau: must be > 0");
    if (cfg.steps < 0) throw ConfigError("steps: must be >= 0");
    if (cfg.classes.empty()) throw ConfigError("classes: must be non-empty");
    try {
        RatchetSpec{cfg.classes}.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("classes: ") + e.what());
    }
    if (!std::isfinite(cfg.fwhm) || cfg.fwhm < 0.0) throw ConfigError("fwhm: must be >= 0");
    if (cfg.n_samples < 1) throw ConfigError("n_samples: must be >= 1");
    if (!(cfg.thermal_fraction >= 0.0 && cfg.thermal_fraction <= 1.0))
        throw ConfigError("thermal_fraction: must lie in [0,1]");
    if (!std::isfinite(cfg.chi)) throw ConfigError("chi: must be finite");
    if (cfg.workers < 1) throw ConfigError("workers: must be >= 1");
}

WalkProtocol make_protocol(const RunConfig& cfg) {
    WalkProtocol p;
    if (cfg.protocol == "original") {
        p = original_protocol();
    } else if (cfg.protocol == "swapped") {
        p = swapped_protocol();
    } else if (cfg.protocol == "lightshift-raw") {
        p = lightshift_raw_protocol(cfg.chi);
    } else {
        p.init_coin = mw_gate(cfg.init_alpha, cfg.init_chi);
        p.step_coin = mw_gate(cfg.step_alpha, cfg.step_chi);
        p.light_shift = cfg.light_shift;
    }
    if (cfg.coin_after_kick) p.coin_position = CoinPosition::after_kick;
    return p;
}

json manifest_json(const RunConfig& cfg, const MomentumLattice& lattice) {
    json doc;
    doc["protocol"] = cfg.protocol;
    doc["k"] = cfg.k;
    doc["tau"] = cfg.tau;
    doc["steps"] = cfg.steps;
    doc["classes"] = cfg.classes;
    doc["fwhm"] = cfg.fwhm;
    doc["n_samples"] = cfg.n_samples;
    doc["seed"] = cfg.seed;
    doc["thermal_fraction"] = cfg.thermal_fraction;
    doc["chi"] = cfg.chi;
    doc["workers"] = cfg.workers;
    doc["write_betas"] = cfg.write_betas;
    if (cfg.protocol == "custom") {
        doc["init_alpha"] = cfg.init_alpha;
        doc["init_chi"] = cfg.init_chi;
        doc["step_alpha"] = cfg.step_alpha;
        doc["step_chi"] = cfg.step_chi;
        doc["light_shift"] = cfg.light_shift;
        doc["coin_after_kick"] = cfg.coin_after_kick;
    }
    if (cfg.fwhm == 0.0 && cfg.thermal_fraction == 0.0) doc["beta"] = 0.0;  // resonant run
    doc["lattice_n_min"] = lattice.n_min;
    doc["lattice_n_max"] = lattice.n_max;
    doc["version"] = library_version;
    return doc;
}

void add_config_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config; flags override same-named keys");
    cmd->add_option("--protocol", cfg.protocol, "original | swapped | lightshift-raw | custom");
    cmd->add_option("--k", cfg.k, "kick strength");
    cmd->add_option("--tau", cfg.tau, "kick period (resonance at 4*pi)");
    cmd->add_option("--steps", cfg.steps, "walk steps");
    cmd->add_option("--classes", cfg.classes, "ratchet momentum classes")->delimiter(',');
    cmd->add_option("--fwhm", cfg.fwhm, "quasi-momentum Gaussian FWHM");
    cmd->add_option("--n-samples", cfg.n_samples, "ensemble size");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--thermal-fraction", cfg.thermal_fraction, "uniform-beta fraction");
    cmd->add_option("--chi", cfg.chi, "compensation phase for lightshift-raw");
    cmd->add_option("--workers", cfg.workers, "worker threads (never affects output)");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_flag("--write-betas", cfg.write_betas, "emit per-sample beta list");
    cmd->add_option("--init-alpha", cfg.init_alpha, "custom protocol: init coin alpha");
    cmd->add_option("--init-chi", cfg.init_chi, "custom protocol: init coin chi");
    cmd->add_option("--step-alpha", cfg.step_alpha, "custom protocol: step coin alpha");
    cmd->add_option("--step-chi", cfg.step_chi, "custom protocol: step coin chi");
    cmd->add_flag("--light-shift", cfg.light_shift, "custom protocol: light shift in the kick");
    cmd->add_flag("--coin-after-kick", cfg.coin_after_kick, "apply the coin after the kick");
}

// --config must take effect before flag overrides, so it is pre-scanned.
void preload_config(int argc, char** argv, RunConfig& cfg) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            load_config_file(argv[i + 1], cfg);
            return;
        }
        if (arg.rfind("--config=", 0) == 0) {
            load_config_file(arg.substr(9), cfg);
            return;
        }
    }
}

void write_run_artifacts(const fs::path& dir, const RunConfig& cfg,
                         const DistributionHistory& history) {
    fs::create_directories(dir);
    write_text_file(dir / "history.csv", history_to_csv(history.total, history.lattice));
    write_text_file(dir / "history_spin2.csv", history_to_csv(history.spin2, history.lattice));
    write_text_file(dir / "history_spin1.csv", history_to_csv(history.spin1, history.lattice));
    write_text_file(dir / "manifest.json", manifest_json(cfg, history.lattice).dump(2) + "\n");
    if (cfg.write_betas) {
        QuasiMomentumEnsemble ens{cfg.fwhm, cfg.n_samples, cfg.seed, cfg.thermal_fraction};
        std::ostringstream betas;
        betas << "sample,beta\n";
        const auto values = sample_betas(ens);
        for (size_t i = 0; i < values.size(); ++i)
            betas << i << ',' << format_double(values[i]) << '\n';
        write_text_file(dir / "betas.csv", betas.str());
    }
}

DistributionHistory run_from_config(const RunConfig& cfg) {
    const WalkProtocol protocol = make_protocol(cfg);
    const RatchetSpec spec{cfg.classes};
    const KickParams params{cfg.k, cfg.tau, protocol.light_shift};
    const QuasiMomentumEnsemble ens{cfg.fwhm, cfg.n_samples, cfg.seed, cfg.thermal_fraction};
    return ensemble_distribution(protocol, spec, cfg.steps, params, ens, cfg.workers);
}

int cmd_simulate(const RunConfig& cfg) {
    validate(cfg);
    const DistributionHistory history = run_from_config(cfg);
    write_run_artifacts(cfg.out, cfg, history);
    std::cout << "simulate: wrote " << cfg.out << " (steps " << cfg.steps << ", lattice ["
              << history.lattice.n_min << ", " << history.lattice.n_max << "])\n";
    return exit_ok;
}

int cmd_analytic(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.steps < 1) throw ConfigError("steps: analytic distribution needs steps >= 1");

    const RatchetSpec spec{cfg.classes};
    const MomentumLattice lattice = make_lattice(cfg.steps, cfg.k, spec);
    const std::vector<double> analytic = analytic_distribution(cfg.steps, cfg.k, spec, lattice);

    const SpinorWavefunction initial = ratchet_state(spec, lattice, Spin::two);
    const KickParams params{cfg.k, 4.0 * std::numbers::pi, false};
    const DistributionHistory numeric =
        run_walk(swapped_protocol(), initial, cfg.steps, params, 0.0);

    double deviation = 0.0;
    for (size_t i = 0; i < analytic.size(); ++i)
        deviation = std::max(deviation,
                             std::abs(analytic[i] - numeric.total[static_cast<size_t>(cfg.steps)][i]));

    fs::create_directories(cfg.out);
    std::ostringstream csv;
    csv << "n,P\n";
    for (int i = 0; i < lattice.size(); ++i)
        csv << lattice.momentum_at(i) << ',' << format_double(analytic[static_cast<size_t>(i)])
            << '\n';
    write_text_file(fs::path(cfg.out) / "analytic.csv", csv.str());
    write_text_file(fs::path(cfg.out) / "coefficients.csv",
                    coefficients_to_csv(coefficients_closed_form(cfg.steps - 1)));

    json summary;
    summary["j"] = cfg.steps;
    summary["k"] = cfg.k;
    summary["classes"] = cfg.classes;
    summary["max_abs_deviation_vs_numeric"] = deviation;
    summary["version"] = library_version;
    write_text_file(fs::path(cfg.out) / "analytic_summary.json", summary.dump(2) + "\n");

    std::cout << "analytic: j=" << cfg.steps << " k=" << cfg.k
              << " max|P_analytic - P_numeric| = " << deviation << "\n";
    if (deviation > 1e-6) {
        std::cerr << "analytic: self-check failed, deviation " << deviation << " > 1e-6\n";
        return exit_numeric;
    }
    return exit_ok;
}

int cmd_sweep(RunConfig cfg, const std::vector<int>& s_values, const std::vector<double>& k_values,
              const std::vector<double>& fwhm_values) {
    validate(cfg);
    const int provided = (!s_values.empty()) + (!k_values.empty()) + (!fwhm_values.empty());
    if (provided != 1)
        throw ConfigError("sweep: exactly one of --sweep-s / --sweep-k / --sweep-fwhm required");

    struct Cell {
        std::string label;
        double value;
    };
    std::vector<Cell> cells;
    std::string axis;
    if (!s_values.empty()) {
        axis = "s";
        for (int s : s_values) {
            if (s < 1) throw ConfigError("sweep-s: class counts must be >= 1");
            cells.push_back({"s_" + std::to_string(s), static_cast<double>(s)});
        }
    } else if (!k_values.empty()) {
        axis = "k";
        for (double k : k_values) {
            std::ostringstream label;
            label << "k_" << k;
            cells.push_back({label.str(), k});
        }
    } else {
        axis = "fwhm";
        for (double f : fwhm_values) {
            std::ostringstream label;
            label << "fwhm_" << f;
            cells.push_back({label.str(), f});
        }
    }

    const fs::path root = cfg.out;
    fs::create_directories(root);
    std::ostringstream rollup;
    rollup << "axis,value,central_fraction_hw2,side_peak_mass\n";
    std::vector<std::string> failures;

    for (const Cell& cell : cells) {
        RunConfig cell_cfg = cfg;
        cell_cfg.out = (root / cell.label).string();
        if (axis == "s") {
            cell_cfg.classes.clear();
            for (int s = 0; s < static_cast<int>(cell.value); ++s) cell_cfg.classes.push_back(s);
        } else if (axis == "k") {
            cell_cfg.k = cell.value;
        } else {
            cell_cfg.fwhm = cell.value;
        }
        try {
            validate(cell_cfg);
            const DistributionHistory history = run_from_config(cell_cfg);
            write_run_artifacts(cell_cfg.out, cell_cfg, history);
            const auto& final_P = history.total.back();
            const double cf = central_fraction(final_P, history.lattice, 2);
            const double peaks =
                mass_at_bins(final_P, history.lattice, side_peak_bins(final_P, history.lattice));
            rollup << axis << ',' << format_double(cell.value) << ',' << format_double(cf) << ','
                   << format_double(peaks) << '\n';
        } catch (const std::exception& e) {
            failures.push_back(cell.label + ": " + e.what());
        }
    }
    write_text_file(root / "rollup.csv", rollup.str());

    if (!failures.empty()) {
        std::cerr << "sweep: " << failures.size() << " cell(s) failed:\n";
        for (const auto& f : failures) std::cerr << "  " << f << '\n';
        return exit_numeric;
    }
    std::cout << "sweep: wrote " << cells.size() << " cells under " << root.string() << "\n";
    return exit_ok;
}

int cmd_energy(const std::vector<std::string>& files, int fit_lo, int fit_hi,
               const std::string& out_dir) {
    if (files.empty()) throw ConfigError("energy: at least one history CSV required");
    fs::create_directories(out_dir);

    for (const std::string& file : files) {
        const DistributionMatrix matrix = read_matrix_csv(file);
        if (matrix.cols() < 2) throw ConfigError("energy: " + file + " has fewer than 2 steps");

        EnergySeries series;
        for (int j = 0; j < matrix.cols(); ++j) {
            double e = 0.0;
            for (int r = 0; r < matrix.rows(); ++r) {
                const double n = matrix.momenta[static_cast<size_t>(r)];
                e += 0.5 * n * n * matrix.columns[static_cast<size_t>(j)][static_cast<size_t>(r)];
            }
            series.values.push_back(e);
        }

        const int hi = (fit_hi > 0) ? fit_hi : series.max_step();
        if (hi - fit_lo + 1 < 3)
            throw ConfigError("energy: fit window [" + std::to_string(fit_lo) + ", " +
                              std::to_string(hi) + "] needs >= 3 points");
        PowerLawFit fit;
        try {
            fit = fit_power_law(series, fit_lo, hi);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("energy: ") + e.what());
        }
        // std::domain_error (nonpositive energies) propagates to exit 3

        const std::string stem = fs::path(file).stem().string();
        write_text_file(fs::path(out_dir) / (stem + ".energy.csv"), energy_to_csv(series));
        json fit_doc;
        fit_doc["exponent"] = fit.exponent;
        fit_doc["stderr"] = fit.stderr_exponent;
        fit_doc["fit_range"] = {fit.j_lo, fit.j_hi};
        fit_doc["source"] = file;
        write_text_file(fs::path(out_dir) / (stem + ".fit.json"), fit_doc.dump(2) + "\n");
        std::cout << "energy: " << file << " exponent " << fit.exponent << " +- "
                  << fit.stderr_exponent << " over [" << fit.j_lo << ", " << fit.j_hi << "]\n";
    }
    return exit_ok;
}

int cmd_compare(const std::string& observed_file, const std::string& predicted_file,
                double scale_a, const std::string& out_dir) {
    const DistributionMatrix observed = read_matrix_csv(observed_file);
    const DistributionMatrix predicted = read_matrix_csv(predicted_file);
    if (observed.rows() != predicted.rows() || observed.cols() != predicted.cols())
        throw ConfigError("compare: shape mismatch, observed " + std::to_string(observed.rows()) +
                          "x" + std::to_string(observed.cols()) + " vs predicted " +
                          std::to_string(predicted.rows()) + "x" +
                          std::to_string(predicted.cols()));

    // rows = n, columns = j in both inputs
    const auto to_rows = [](const DistributionMatrix& m) {
        std::vector<std::vector<double>> rows(static_cast<size_t>(m.rows()),
                                              std::vector<double>(static_cast<size_t>(m.cols())));
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                rows[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    m.columns[static_cast<size_t>(c)][static_cast<size_t>(r)];
        return rows;
    };
    const ComparisonResult result = compare_walks(to_rows(observed), to_rows(predicted), scale_a);

    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "comparison.csv", comparison_to_csv(result));
    json summary;
    summary["total_error"] = result.total_error;
    summary["skipped_pixels"] = result.skipped_pixels;
    summary["scale_a"] = result.scale_a;
    summary["rows"] = observed.rows();
    summary["cols"] = observed.cols();
    write_text_file(fs::path(out_dir) / "comparison.json", summary.dump(2) + "\n");
    std::cout << "compare: total_error " << result.total_error << " over "
              << (static_cast<long>(observed.rows()) * observed.cols() - result.skipped_pixels)
              << " pixels (" << result.skipped_pixels << " skipped), a = " << scale_a << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Momentum-space quantum walks on the spinor kicked rotor"};
    app.set_version_flag("--version", library_version);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    CLI::App* simulate = app.add_subcommand("simulate", "run a walk or ensemble, write artifacts");
    add_config_options(simulate, cfg, config_path);

    CLI::App* analytic = app.add_subcommand("analytic", "closed-form distribution + self-check");
    add_config_options(analytic, cfg, config_path);

    CLI::App* sweep = app.add_subcommand("sweep", "grid over S, k, or fwhm with roll-up");
    add_config_options(sweep, cfg, config_path);
    std::vector<int> sweep_s;
    std::vector<double> sweep_k, sweep_fwhm;
    sweep->add_option("--sweep-s", sweep_s, "class counts, e.g. 2,3,5")->delimiter(',');
    sweep->add_option("--sweep-k", sweep_k, "kick strengths")->delimiter(',');
    sweep->add_option("--sweep-fwhm", sweep_fwhm, "quasi-momentum widths")->delimiter(',');

    CLI::App* energy = app.add_subcommand("energy", "mean energies + power-law fits");
    std::vector<std::string> energy_files;
    int fit_lo = 2, fit_hi = 0;
    std::string energy_out = "out";
    energy->add_option("files", energy_files, "history CSV files")->required();
    energy->add_option("--fit-min", fit_lo, "first step of the fit window");
    energy->add_option("--fit-max", fit_hi, "last step of the fit window (default: last)");
    energy->add_option("--out", energy_out, "output directory");

    CLI::App* compare = app.add_subcommand("compare", "pixelwise relative difference");
    std::string observed_file, predicted_file;
    double scale_a = 1.0;
    std::string compare_out = "out";
    compare->add_option("observed", observed_file, "observed distribution CSV")->required();
    compare->add_option("predicted", predicted_file, "predicted distribution CSV")->required();
    compare->add_option("--scale", scale_a, "rescaling factor a");
    compare->add_option("--out", compare_out, "output directory");

    try {
        preload_config(argc, argv, cfg);
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (analytic->parsed()) return cmd_analytic(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg, sweep_s, sweep_k, sweep_fwhm);
        if (energy->parsed()) return cmd_energy(energy_files, fit_lo, fit_hi, energy_out);
        if (compare->parsed())
            return cmd_compare(observed_file, predicted_file, scale_a, compare_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const TruncationError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_ok;
}
