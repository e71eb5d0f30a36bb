// dualent: simulate and quantify the dual entanglement of an identical
// two-particle state: dual representation, CHSH values and optima, Monte
// Carlo coincidence runs, distinguishability/decoherence sweeps, and the
// trap-temperature criterion.

#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dualent/bell.hpp"
#include "dualent/dualism.hpp"
#include "dualent/experiment.hpp"
#include "dualent/identicity.hpp"
#include "dualent/io.hpp"
#include "dualent/version.hpp"

namespace {

using namespace dualent;
namespace fs = std::filesystem;

struct GlobalOpts {
    std::uint64_t seed = 42;
    std::string out_dir = ".";
    std::string format = "both";  // csv | json | both

    bool want_csv() const { return format == "csv" || format == "both"; }
    bool want_json() const { return format == "json" || format == "both"; }
};

std::string fmt4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

Statistics parse_statistics(const std::string& s) {
    if (s == "boson") return Statistics::Boson;
    if (s == "fermion") return Statistics::Fermion;
    throw ConfigError("statistics must be 'boson' or 'fermion', got '" + s + "'");
}

MeasurementSetting parse_setting(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ConfigError("setting must be 'theta,phi' in radians, got '" + s + "'");
    return make_setting(detail::parse_real_strict(s.substr(0, comma)),
                        detail::parse_real_strict(s.substr(comma + 1)));
}

std::string format_setting(const MeasurementSetting& s) {
    return format_double(s.theta) + "," + format_double(s.phi);
}

// Inclusive numeric grid 'start:stop:step', or a single value.
std::vector<double> parse_range(const std::string& s) {
    if (s.find(':') == std::string::npos) return {detail::parse_real_strict(s)};
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("range must be 'start:stop:step', got '" + s + "'");
    const double start = detail::parse_real_strict(s.substr(0, c1));
    const double stop = detail::parse_real_strict(s.substr(c1 + 1, c2 - c1 - 1));
    const double step = detail::parse_real_strict(s.substr(c2 + 1));
    if (!(step > 0.0)) throw ConfigError("range step must be > 0");
    if (stop < start) throw ConfigError("range stop must be >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1.5));
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k) grid.push_back(start + static_cast<double>(k) * step);
    return grid;
}

void write_outputs(const GlobalOpts& g, const std::string& stem, const RunManifest& manifest,
                   const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows) {
    fs::create_directories(g.out_dir);
    if (g.want_csv())
        write_text_file(fs::path(g.out_dir) / (stem + ".csv"), sweep_csv(manifest, columns, rows));
    if (g.want_json()) {
        ordered_json j;
        j["manifest"] = manifest_json(manifest);
        j["columns"] = columns;
        j["rows"] = rows;
        write_text_file(fs::path(g.out_dir) / (stem + ".json"), j.dump(2) + "\n");
    }
}

std::string describe_state(const DualPairState& s) {
    return "alpha = " + format_complex(s.alpha) + ", beta = " + format_complex(s.beta) +
           " (" + statistics_name(s.statistics) + "), label " + s.label_var.name + "(" +
           s.label_var.eigenlabels[0] + ", " + s.label_var.eigenlabels[1] + "), entangled " +
           s.entangled_var.name + "(" + s.entangled_var.eigenlabels[0] + ", " +
           s.entangled_var.eigenlabels[1] + ")";
}

// ---------------------------------------------------------------------------
// dual

struct DualOpts {
    std::string alpha, beta;
    std::string stat = "boson";
    std::string label_name = "momentum", label_first = "-k", label_second = "k";
    std::string ent_name = "polarization", ent_first = "H", ent_second = "V";
};

int run_dual(const DualOpts& o) {
    const DualPairState state =
        make_state(parse_complex(o.alpha), parse_complex(o.beta),
                   VariablePair(o.label_name, o.label_first, o.label_second),
                   VariablePair(o.ent_name, o.ent_first, o.ent_second), parse_statistics(o.stat));
    const DualityReport r = dualism_magnitude_check(state);
    std::printf("original:    %s\n", describe_state(r.original).c_str());
    std::printf("dual:        %s\n", describe_state(r.dual).c_str());
    std::printf("concurrence: original %s, dual %s\n", fmt4(r.concurrence_original).c_str(),
                fmt4(r.concurrence_dual).c_str());
    std::printf("factorizable: %s\n", r.factorizable ? "true" : "false");
    return 0;
}

// ---------------------------------------------------------------------------
// chsh

struct ChshOpts {
    std::string state = "maximal";
    std::string alpha, beta;
    std::string stat = "boson";
    double overlap = 1.0;
    bool optimize = false;
    std::string a, a_prime, b, b_prime;
};

DualPairState state_from_amplitudes(const std::string& alpha, const std::string& beta,
                                    const std::string& stat) {
    DualPairState s = photon_pair_state(parse_complex(alpha), parse_complex(beta));
    s.statistics = parse_statistics(stat);
    return s;
}

int run_chsh(const GlobalOpts& g, const ChshOpts& o) {
    DualPairState state = photon_bell_pair();
    if (!o.alpha.empty() || !o.beta.empty()) {
        if (o.alpha.empty() || o.beta.empty())
            throw ConfigError("--alpha and --beta must be given together");
        state = state_from_amplitudes(o.alpha, o.beta, o.stat);
    } else if (o.state != "maximal") {
        throw ConfigError("--state must be 'maximal' unless --alpha/--beta are given");
    }
    const DensityOperator4 rho = degraded_dual_state(state, make_overlap(o.overlap));

    RunManifest manifest;
    manifest.subcommand = "chsh";
    manifest.seed = g.seed;
    manifest.add("alpha", format_complex(state.alpha));
    manifest.add("beta", format_complex(state.beta));
    manifest.add("stat", statistics_name(state.statistics));
    manifest.add("overlap", o.overlap);

    ChshSettings settings;
    double s_value = 0.0;
    if (o.optimize) {
        const ChshOptimum opt = optimize_chsh(rho);
        settings = opt.settings;
        s_value = opt.s_max;
        std::printf("sMax = %s\n", fmt4(s_value).c_str());
    } else {
        if (o.a.empty() || o.a_prime.empty() || o.b.empty() || o.b_prime.empty())
            throw ConfigError("give --optimize or all of --a --a-prime --b --b-prime");
        settings = ChshSettings{parse_setting(o.a), parse_setting(o.a_prime), parse_setting(o.b),
                                parse_setting(o.b_prime)};
        s_value = chsh(rho, settings);
        std::printf("S = %s\n", fmt4(s_value).c_str());
    }
    std::printf("a       = (%s, %s)\n", fmt4(settings.a.theta).c_str(), fmt4(settings.a.phi).c_str());
    std::printf("aPrime  = (%s, %s)\n", fmt4(settings.a_prime.theta).c_str(),
                fmt4(settings.a_prime.phi).c_str());
    std::printf("b       = (%s, %s)\n", fmt4(settings.b.theta).c_str(), fmt4(settings.b.phi).c_str());
    std::printf("bPrime  = (%s, %s)\n", fmt4(settings.b_prime.theta).c_str(),
                fmt4(settings.b_prime.phi).c_str());

    manifest.add("optimize", std::string(o.optimize ? "true" : "false"));
    manifest.add("a", format_setting(settings.a));
    manifest.add("aPrime", format_setting(settings.a_prime));
    manifest.add("b", format_setting(settings.b));
    manifest.add("bPrime", format_setting(settings.b_prime));

    write_outputs(g, "chsh", manifest,
                  {"sMax", "aTheta", "aPhi", "aPrimeTheta", "aPrimePhi", "bTheta", "bPhi",
                   "bPrimeTheta", "bPrimePhi"},
                  {{s_value, settings.a.theta, settings.a.phi, settings.a_prime.theta,
                    settings.a_prime.phi, settings.b.theta, settings.b.phi,
                    settings.b_prime.theta, settings.b_prime.phi}});
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
    std::string config_file;
    std::string alpha = "0.7071067811865476";
    std::string beta = "0.7071067811865476";
    std::string stat = "boson";
    std::uint64_t pairs = 250000;
    double overlap = 1.0;
    double efficiency = 1.0;
    std::string a, a_prime, b, b_prime;  // empty: use the optimizer's settings
};

int run_simulate(const GlobalOpts& g, const SimulateOpts& o, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.state = state_from_amplitudes(o.alpha, o.beta, o.stat);
    cfg.n_pairs_per_setting_pair = o.pairs;
    cfg.seed = seed;
    cfg.overlap_v = o.overlap;
    cfg.detector_efficiency = o.efficiency;

    const bool explicit_settings =
        !o.a.empty() || !o.a_prime.empty() || !o.b.empty() || !o.b_prime.empty();
    if (explicit_settings) {
        if (o.a.empty() || o.a_prime.empty() || o.b.empty() || o.b_prime.empty())
            throw ConfigError("give all of --a --a-prime --b --b-prime or none");
        cfg.settings = ChshSettings{parse_setting(o.a), parse_setting(o.a_prime),
                                    parse_setting(o.b), parse_setting(o.b_prime)};
    } else {
        cfg.settings =
            optimize_chsh(degraded_dual_state(cfg.state, make_overlap(o.overlap))).settings;
    }

    const ExperimentResult r = run_experiment(cfg);

    RunManifest manifest;
    manifest.subcommand = "simulate";
    manifest.seed = seed;
    manifest.add("alpha", format_complex(cfg.state.alpha));
    manifest.add("beta", format_complex(cfg.state.beta));
    manifest.add("stat", statistics_name(cfg.state.statistics));
    manifest.add("pairs", cfg.n_pairs_per_setting_pair);
    manifest.add("overlap", cfg.overlap_v);
    manifest.add("efficiency", cfg.detector_efficiency);
    manifest.add("a", format_setting(cfg.settings.a));
    manifest.add("aPrime", format_setting(cfg.settings.a_prime));
    manifest.add("b", format_setting(cfg.settings.b));
    manifest.add("bPrime", format_setting(cfg.settings.b_prime));

    fs::create_directories(g.out_dir);
    if (g.want_json())
        write_text_file(fs::path(g.out_dir) / "result.json",
                        experiment_result_json(manifest, cfg.settings, r).dump(2) + "\n");
    if (g.want_csv())
        write_text_file(fs::path(g.out_dir) / "counts.csv", experiment_counts_csv(manifest, r));

    std::printf("sHat = %s +- %s  (pairs per setting pair: %" PRIu64 ", seed: %" PRIu64 ")\n",
                fmt4(r.s_hat).c_str(), fmt4(r.s_std_err).c_str(), cfg.n_pairs_per_setting_pair,
                seed);
    return 0;
}

// ---------------------------------------------------------------------------
// identicity-sweep, decohere, temperature

int run_identicity_sweep(const GlobalOpts& g, const std::string& v_range) {
    std::vector<OverlapParameter> grid;
    for (double v : parse_range(v_range)) grid.push_back(make_overlap(v));
    const auto curve = smax_vs_overlap(grid);

    RunManifest manifest;
    manifest.subcommand = "identicity-sweep";
    manifest.seed = g.seed;
    manifest.add("v", v_range);

    std::vector<std::vector<double>> rows;
    rows.reserve(curve.size());
    for (const auto& [v, smax] : curve) {
        rows.push_back({v, smax});
        std::printf("v = %s  sMax = %s\n", fmt4(v).c_str(), fmt4(smax).c_str());
    }
    write_outputs(g, "identicity_sweep", manifest, {"v", "sMax"}, rows);
    return 0;
}

struct DecohereOpts {
    double gamma_id = 0.0;
    double gamma_path = 0.0;
    std::string d1 = "0";
    std::string d2 = "0";
    double speed = 1.0;
};

int run_decohere(const GlobalOpts& g, const DecohereOpts& o) {
    const DualPairState bell = photon_bell_pair();
    RunManifest manifest;
    manifest.subcommand = "decohere";
    manifest.seed = g.seed;
    manifest.add("gammaId", o.gamma_id);
    manifest.add("gammaPath", o.gamma_path);
    manifest.add("d1", o.d1);
    manifest.add("d2", o.d2);
    manifest.add("speed", o.speed);

    std::vector<std::vector<double>> rows;
    for (double d1 : parse_range(o.d1)) {
        for (double d2 : parse_range(o.d2)) {
            const TransitionParams p =
                make_transition_params(o.gamma_id, o.gamma_path, d1, d2, o.speed);
            const double smax = optimize_chsh(transition_channel(p, bell)).s_max;
            rows.push_back({d1, d2, smax});
        }
    }
    for (const auto& row : rows)
        std::printf("d1 = %s  d2 = %s  sMax = %s\n", fmt4(row[0]).c_str(), fmt4(row[1]).c_str(),
                    fmt4(row[2]).c_str());
    write_outputs(g, "decohere", manifest, {"d1", "d2", "sMax"}, rows);
    return 0;
}

int run_temperature(const GlobalOpts& g, double mass_number, double dx) {
    const double theta = temperature_threshold(make_temperature_query(mass_number, dx));
    RunManifest manifest;
    manifest.subcommand = "temperature";
    manifest.seed = g.seed;
    manifest.add("massNumber", mass_number);
    manifest.add("dx", dx);
    std::printf("theta = %.6e K\n", theta);
    write_outputs(g, "temperature", manifest, {"massNumber", "dx", "thetaKelvin"},
                  {{mass_number, dx, theta}});
    return 0;
}

// ---------------------------------------------------------------------------

// Applies `key = value` config-file entries to any simulate option the
// command line left untouched.
void apply_simulate_config(const fs::path& path, SimulateOpts& o, GlobalOpts& g,
                           std::uint64_t& seed, const std::map<std::string, bool>& set_on_cli) {
    const auto untouched = [&set_on_cli](const std::string& key) {
        const auto it = set_on_cli.find(key);
        return it == set_on_cli.end() || !it->second;
    };
    for (const auto& [key, value] : parse_config_file(path)) {
        if (!untouched(key)) continue;
        if (key == "alpha") o.alpha = value;
        else if (key == "beta") o.beta = value;
        else if (key == "stat") o.stat = value;
        else if (key == "pairs") o.pairs = std::strtoull(value.c_str(), nullptr, 10);
        else if (key == "overlap") o.overlap = detail::parse_real_strict(value);
        else if (key == "efficiency") o.efficiency = detail::parse_real_strict(value);
        else if (key == "a") o.a = value;
        else if (key == "aPrime") o.a_prime = value;
        else if (key == "b") o.b = value;
        else if (key == "bPrime") o.b_prime = value;
        else if (key == "seed") seed = std::strtoull(value.c_str(), nullptr, 10);
        else if (key == "format") g.format = value;
        else if (key == "outDir") g.out_dir = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-entanglement toolkit"};
    app.set_version_flag("--version", dualent::kToolVersion);
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--seed", global.seed, "RNG seed for stochastic subcommands");
    app.add_option("--out-dir", global.out_dir, "directory for output files");
    app.add_option("--format", global.format, "output file format")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    DualOpts dual_opts;
    auto* dual_cmd = app.add_subcommand("dual", "dual representation and concurrence report");
    dual_cmd->add_option("--alpha", dual_opts.alpha, "first amplitude (a, ai, a+bi, a-bi)")
        ->required();
    dual_cmd->add_option("--beta", dual_opts.beta, "second amplitude")->required();
    dual_cmd->add_option("--stat", dual_opts.stat, "boson or fermion");
    dual_cmd->add_option("--label-var", dual_opts.label_name, "label variable name");
    dual_cmd->add_option("--label-first", dual_opts.label_first, "first label eigenvalue");
    dual_cmd->add_option("--label-second", dual_opts.label_second, "second label eigenvalue");
    dual_cmd->add_option("--ent-var", dual_opts.ent_name, "entangled variable name");
    dual_cmd->add_option("--ent-first", dual_opts.ent_first, "first entangled eigenvalue");
    dual_cmd->add_option("--ent-second", dual_opts.ent_second, "second entangled eigenvalue");

    ChshOpts chsh_opts;
    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value or optimum for a dual state");
    chsh_cmd->add_option("--state", chsh_opts.state, "named state ('maximal')");
    chsh_cmd->add_option("--alpha", chsh_opts.alpha, "first amplitude");
    chsh_cmd->add_option("--beta", chsh_opts.beta, "second amplitude");
    chsh_cmd->add_option("--stat", chsh_opts.stat, "boson or fermion");
    chsh_cmd->add_option("--overlap", chsh_opts.overlap, "identicity overlap v in [0,1]");
    chsh_cmd->add_flag("--optimize", chsh_opts.optimize, "search for the maximal violation");
    chsh_cmd->add_option("--a", chsh_opts.a, "setting 'theta,phi'");
    chsh_cmd->add_option("--a-prime", chsh_opts.a_prime, "setting 'theta,phi'");
    chsh_cmd->add_option("--b", chsh_opts.b, "setting 'theta,phi'");
    chsh_cmd->add_option("--b-prime", chsh_opts.b_prime, "setting 'theta,phi'");

    SimulateOpts sim_opts;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo coincidence experiment");
    auto* opt_config = sim_cmd->add_option("--config", sim_opts.config_file,
                                           "key = value config file (flags override)");
    auto* opt_alpha = sim_cmd->add_option("--alpha", sim_opts.alpha, "first amplitude");
    auto* opt_beta = sim_cmd->add_option("--beta", sim_opts.beta, "second amplitude");
    auto* opt_stat = sim_cmd->add_option("--stat", sim_opts.stat, "boson or fermion");
    auto* opt_pairs = sim_cmd->add_option("--pairs", sim_opts.pairs, "pairs per setting pair");
    auto* opt_overlap = sim_cmd->add_option("--overlap", sim_opts.overlap, "identicity overlap v");
    auto* opt_eff =
        sim_cmd->add_option("--efficiency", sim_opts.efficiency, "per-detector efficiency (0,1]");
    auto* opt_a = sim_cmd->add_option("--a", sim_opts.a, "setting 'theta,phi'");
    auto* opt_ap = sim_cmd->add_option("--a-prime", sim_opts.a_prime, "setting 'theta,phi'");
    auto* opt_b = sim_cmd->add_option("--b", sim_opts.b, "setting 'theta,phi'");
    auto* opt_bp = sim_cmd->add_option("--b-prime", sim_opts.b_prime, "setting 'theta,phi'");

    std::string sweep_range = "0:1:0.1";
    auto* sweep_cmd =
        app.add_subcommand("identicity-sweep", "sMax versus identicity overlap v");
    sweep_cmd->add_option("--v", sweep_range, "grid 'start:stop:step' or single value");

    DecohereOpts dec_opts;
    auto* dec_cmd = app.add_subcommand("decohere", "sMax under trap and path dephasing");
    dec_cmd->add_option("--gamma-id", dec_opts.gamma_id, "identicity-loss rate (1/s)");
    dec_cmd->add_option("--gamma-path", dec_opts.gamma_path, "path-dephasing rate (1/s)");
    dec_cmd->add_option("--d1", dec_opts.d1, "trap separation distance(s), m");
    dec_cmd->add_option("--d2", dec_opts.d2, "path-superposition distance(s), m");
    dec_cmd->add_option("--speed", dec_opts.speed, "transport speed, m/s");

    double mass_number = 100.0, dx = 1e-9;
    auto* temp_cmd =
        app.add_subcommand("temperature", "trap temperature bound for indistinguishability");
    temp_cmd->add_option("--mass-number", mass_number, "molecular mass number (amu)");
    temp_cmd->add_option("--dx", dx, "position spread of each wavepacket, m");

    try {
        app.parse(argc, argv);

        if (*dual_cmd) return run_dual(dual_opts);
        if (*chsh_cmd) return run_chsh(global, chsh_opts);
        if (*sim_cmd) {
            std::uint64_t seed = global.seed;
            if (*opt_config) {
                std::map<std::string, bool> on_cli{
                    {"alpha", opt_alpha->count() > 0}, {"beta", opt_beta->count() > 0},
                    {"stat", opt_stat->count() > 0},   {"pairs", opt_pairs->count() > 0},
                    {"overlap", opt_overlap->count() > 0}, {"efficiency", opt_eff->count() > 0},
                    {"a", opt_a->count() > 0},         {"aPrime", opt_ap->count() > 0},
                    {"b", opt_b->count() > 0},         {"bPrime", opt_bp->count() > 0},
                    {"seed", app.count("--seed") > 0}, {"format", app.count("--format") > 0},
                    {"outDir", app.count("--out-dir") > 0}};
                apply_simulate_config(sim_opts.config_file, sim_opts, global, seed, on_cli);
            }
            return run_simulate(global, sim_opts, seed);
        }
        if (*sweep_cmd) return run_identicity_sweep(global, sweep_range);
        if (*dec_cmd) return run_decohere(global, dec_opts);
        if (*temp_cmd) return run_temperature(global, mass_number, dx);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const dualent::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dualent::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
