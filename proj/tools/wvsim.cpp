// wvsim — weak-measurement interferometry campaigns.
//
// Subcommands: fringe, sweep, montecarlo. Configuration comes from an
// optional JSON document plus flag overrides; flags win. Output is CSV.
// Exit codes: 0 success, 2 invalid configuration, 3 I/O failure,
// 4 numerical failure.

#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wvsim/campaign.hpp"
#include "wvsim/csv.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

wvsim::EvolutionModel parse_model(const std::string& name) {
    if (name == "exact") return wvsim::EvolutionModel::Exact;
    if (name == "first-order") return wvsim::EvolutionModel::FirstOrder;
    if (name == "re-exp") return wvsim::EvolutionModel::ReExponentiated;
    throw std::invalid_argument("unknown model '" + name + "'");
}

wvsim::ContrastPolicy parse_policy(const std::string& name) {
    if (name == "paper") return wvsim::ContrastPolicy::Paper;
    if (name == "uniform") return wvsim::ContrastPolicy::Uniform;
    if (name == "none") return wvsim::ContrastPolicy::None;
    throw std::invalid_argument("unknown contrast policy '" + name + "'");
}

void load_config_json(const std::string& path, wvsim::CampaignConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json doc = json::parse(in);

    if (doc.contains("pre")) {
        config.pre = wvsim::PostSelection(doc["pre"].at("theta").get<double>(),
                                          doc["pre"].at("phi").get<double>());
    }
    if (doc.contains("phi")) config.phi = doc["phi"].get<double>();
    if (doc.contains("theta")) config.theta = doc["theta"].get<double>();
    if (doc.contains("theta_grid")) {
        const json& g = doc["theta_grid"];
        config.theta_grid = {g.at("start").get<double>(), g.at("stop").get<double>(),
                             g.at("count").get<int>()};
    }
    if (doc.contains("alpha")) config.alpha = doc["alpha"].get<double>();
    if (doc.contains("model")) config.model = parse_model(doc["model"].get<std::string>());
    if (doc.contains("detector")) {
        const json& d = doc["detector"];
        if (d.is_string() && d.get<std::string>() == "ideal") {
            config.detector.reset();
        } else {
            wvsim::DetectorModel det;
            if (d.contains("contrast")) det.contrast = d["contrast"].get<double>();
            if (d.contains("background")) det.background_rate = d["background"].get<double>();
            if (d.contains("flux")) det.flux = d["flux"].get<double>();
            if (d.contains("exposure")) det.exposure = d["exposure"].get<double>();
            if (d.contains("seed")) det.seed = d["seed"].get<std::uint64_t>();
            config.detector = det;
        }
    }
    if (doc.contains("contrast_policy")) {
        config.policy = parse_policy(doc["contrast_policy"].get<std::string>());
    }
    if (doc.contains("replicates")) config.replicates = doc["replicates"].get<int>();
    if (doc.contains("chi_points")) config.chi_points = doc["chi_points"].get<int>();
    if (doc.contains("threads")) config.threads = doc["threads"].get<int>();
    if (doc.contains("output")) config.output = doc["output"].get<std::string>();
}

struct FlagValues {
    std::string config_path;
    double phi = 0.0, alpha = 0.0, theta = 0.0;
    double contrast = 0.8, background = 0.0, flux = 1e4, exposure = 1.0;
    std::uint64_t seed = 0;
    std::string model = "exact", policy = "uniform", out;
    int replicates = 200, threads = 0, chi_points = 33;
};

void add_common_flags(CLI::App* cmd, FlagValues& v) {
    cmd->add_option("--config", v.config_path, "JSON campaign configuration");
    cmd->add_option("--phi", v.phi, "post-selection azimuthal angle (rad)");
    cmd->add_option("--alpha", v.alpha, "weak rotation angle per arm (rad)");
    cmd->add_option("--model", v.model, "evolution model: exact|first-order|re-exp");
    cmd->add_option("--contrast", v.contrast, "detector contrast in [0,1]");
    cmd->add_option("--background", v.background, "background rate (counts/s)");
    cmd->add_option("--flux", v.flux, "beam flux (counts/s)");
    cmd->add_option("--exposure", v.exposure, "exposure per setting (s)");
    cmd->add_option("--seed", v.seed, "RNG seed");
    cmd->add_option("--out", v.out, "output CSV path");
    cmd->add_option("--replicates", v.replicates, "Monte-Carlo replicates per grid point");
    cmd->add_option("--contrast-policy", v.policy, "paper|uniform|none");
    cmd->add_option("--threads", v.threads, "worker threads (0 = hardware)");
    cmd->add_option("--theta", v.theta, "fringe post-selection polar angle (rad)");
    cmd->add_option("--chi-points", v.chi_points, "points per fringe scan");
}

// Flags win over the config file; detector flags only take effect when any
// of them (or a detector block) makes the campaign noisy.
wvsim::CampaignConfig build_config(const CLI::App* cmd, const FlagValues& v) {
    wvsim::CampaignConfig config;
    if (cmd->count("--config") > 0) load_config_json(v.config_path, config);

    if (cmd->count("--phi")) config.phi = v.phi;
    if (cmd->count("--alpha")) config.alpha = v.alpha;
    if (cmd->count("--theta")) config.theta = v.theta;
    if (cmd->count("--model")) config.model = parse_model(v.model);
    if (cmd->count("--contrast-policy")) config.policy = parse_policy(v.policy);
    if (cmd->count("--replicates")) config.replicates = v.replicates;
    if (cmd->count("--threads")) config.threads = v.threads;
    if (cmd->count("--chi-points")) config.chi_points = v.chi_points;
    if (cmd->count("--out")) config.output = v.out;

    const bool detector_flags = cmd->count("--contrast") || cmd->count("--background") ||
                                cmd->count("--flux") || cmd->count("--exposure") ||
                                cmd->count("--seed");
    if (detector_flags) {
        wvsim::DetectorModel det = config.detector.value_or(wvsim::DetectorModel{});
        if (cmd->count("--contrast")) det.contrast = v.contrast;
        if (cmd->count("--background")) det.background_rate = v.background;
        if (cmd->count("--flux")) det.flux = v.flux;
        if (cmd->count("--exposure")) det.exposure = v.exposure;
        if (cmd->count("--seed")) det.seed = v.seed;
        config.detector = det;
    }
    return config;
}

template <typename WriteFn>
int write_output(const std::string& path, WriteFn&& write) {
    if (path.empty()) {
        write(std::cout);
        return std::cout ? 0 : kExitIo;
    }
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitIo;
    }
    write(out);
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing '" << path << "'\n";
        return kExitIo;
    }
    return 0;
}

int run(const std::string& campaign, const CLI::App* cmd, const FlagValues& v) {
    const wvsim::CampaignConfig config = build_config(cmd, v);
    if (wvsim::Coupling(config.alpha).beyond_weak_regime()) {
        std::cerr << "warning: alpha = " << wvsim::format_number(config.alpha)
                  << " rad is beyond the weak regime\n";
    }

    if (camp "fringe" == campaign) {
        const wvsim::FringeResult result = wvsim::run_fringe(config);
        return write_output(config.output,
                            [&](std::ostream& os) { wvsim::write_fringe_csv(os, result); });
    }
    if (campaign == "sweep") {
        const auto rows = wvsim::run_sweep(config);
        return write_output(config.output,
                            [&](std::ostream& os) { wvsim::write_sweep_csv(os, rows); });
    }
    const auto rows = wvsim::run_montecarlo(config);
    return write_output(config.output,
                        [&](std::ostream& os) { wvsim::write_montecarlo_csv(os, rows); });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-measurement interferometry simulator and data reduction"};
    app.require_subcommand(1);

    FlagValues fringe_v, sweep_v, mc_v;
    CLI::App* fringe = app.add_subcommand("fringe", "reference and weak-rotation fringe scans");
    CLI::App* sweep = app.add_subcommand("sweep", "weak-value extraction over a theta grid");
    CLI::App* mc = app.add_subcommand("montecarlo", "noisy replicate campaign with pull statistics");
    add_common_flags(fringe, fringe_v);
    add_common_flags(sweep, sweep_v);
    add_common_flags(mc, mc_v);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (fringe->parsed()) return run("fringe", fringe, fringe_v);
        if (sweep->parsed()) return run("sweep", sweep, sweep_v);
        return run("montecarlo", mc, mc_v);
    } catch (const wvsim::fit_failure_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const wvsim::atanh_divergence_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const wvsim::orthogonal_postselection_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const wvsim::no_signal_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const wvsim::undefined_state_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const wvsim::unsupported_model_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
