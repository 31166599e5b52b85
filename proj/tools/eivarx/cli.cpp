#include "eivarx/cli.hpp"

#include "eivarx/config.hpp"

#include <eivarx/eivarx.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace eivarx::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

const char* const kVersion = EIVARX_VERSION;

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json manifest(const std::string& subcommand, const RunConfig* config,
                      const ordered_json& inputs, const ordered_json& outputs,
                      std::optional<std::uint64_t> seed) {
    ordered_json m;
    m["subcommand"] = subcommand;
    m["version"] = kVersion;
    m["timestamp"] = iso_timestamp();
    if (seed) m["seed"] = *seed;
    else m["seed"] = nullptr;
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    ordered_json cfg = ordered_json::object();
    if (config)
        for (const auto& [k, v] : describe(*config)) cfg[k] = v;
    m["config"] = cfg;
    return m;
}

RunConfig resolve(const std::string& preset_name, const std::string& config_path) {
    RunConfig c = preset_name.empty() ? RunConfig{} : preset(preset_name);
    if (!config_path.empty()) c = load_config(config_path, c);
    return c;
}

void ensure_parent(const std::string& path) {
    const fs::path parent = fs::path(path).parent_path();
    if (parent.empty()) return;
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory '" + parent.string() + "': " + ec.message());
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string config, preset, out;
    std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    if (a.config.empty() && a.preset.empty())
        throw ConfigError("simulate needs --config or --preset");
    RunConfig c = resolve(a.preset, a.config);
    validate(c);

    std::uint64_t seed = 0;
    if (a.seed) {
        seed = *a.seed;
    } else {
        seed = static_cast<std::uint64_t>(
            std::chrono::system_clock::now().time_since_epoch().count());
        err << "warning: no --seed given, using time-derived seed " << seed << "\n";
    }

    const Scenario& sc = c.scenario;
    const Vector u_star = generate_prbs(sc.register_length(), sc.n, sc.prbs_seed, sc.levels);
    const Vector y_star = simulate_system(sc.model, u_star);
    if (c.snr_u) c.scenario.noise.sigma2_eu = sample_variance(u_star) / *c.snr_u;
    if (c.snr_y) {
        const double basis0 = scaled_acvf_basis(sc.model.a, 0).at(0);
        c.scenario.noise.sigma2_ey = sample_variance(y_star) / (*c.snr_y * basis0);
    }

    TimeSeriesPair series = corrupt_measurements(y_star, u_star, sc.model, c.scenario.noise, seed);
    ensure_parent(a.out);
    write_series_csv(a.out, series, true);

    const std::string manifest_path = a.out + ".manifest.json";
    ordered_json inputs = ordered_json::object();
    if (!a.config.empty()) inputs["config"] = a.config;
    if (!a.preset.empty()) inputs["preset"] = a.preset;
    ordered_json outputs{{"data", a.out}, {"manifest", manifest_path}};
    write_text_file(manifest_path, manifest("simulate", &c, inputs, outputs, seed).dump(2) + "\n");

    out << "wrote " << series.size() << " samples to " << a.out << " (sigma2_ey="
        << c.scenario.noise.sigma2_ey << ", sigma2_eu=" << c.scenario.noise.sigma2_eu << ")\n";
    return kOk;
}

// ---- identify ---------------------------------------------------------------

struct IdentifyArgs {
    std::string data, config, out;
    std::optional<int> lag;
    std::optional<double> alpha;
};

int cmd_identify(const IdentifyArgs& a, std::ostream& out) {
    RunConfig c = resolve("", a.config);
    if (a.lag) c.pipeline.lag = *a.lag;
    if (a.alpha) c.pipeline.alpha = *a.alpha;
    c.pipeline.validate();

    const TimeSeriesPair series = read_series_csv(a.data);
    const IdentificationReport report = identify(series, c.pipeline);
    const std::string json = report_to_json(report);

    if (a.out.empty()) {
        out << json << "\n";
        return kOk;
    }
    ensure_parent(a.out);
    write_text_file(a.out, json + "\n");
    const std::string manifest_path = a.out + ".manifest.json";
    ordered_json inputs{{"data", a.data}};
    if (!a.config.empty()) inputs["config"] = a.config;
    ordered_json outputs{{"report", a.out}, {"manifest", manifest_path}};
    write_text_file(manifest_path,
                    manifest("identify", &c, inputs, outputs, std::nullopt).dump(2) + "\n");
    out << "eta_hat=" << report.eta_hat << " d_hat=" << report.d_hat
        << " delay_hat=" << report.delay_hat << " -> " << a.out << "\n";
    return kOk;
}

// ---- mc ---------------------------------------------------------------------

struct McArgs {
    std::string config, preset, out, methods;
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    std::optional<unsigned> threads;
};

int cmd_mc(const McArgs& a, std::ostream& out, std::ostream& err) {
    RunConfig c = resolve(a.preset, a.config);
    if (a.seed) c.base_seed = *a.seed;
    if (a.replications) {
        if (*a.replications < 1) throw ConfigError("--replications must be at least 1");
        c.replications = *a.replications;
    }
    if (a.threads) c.threads = *a.threads;
    if (!a.methods.empty()) c = parse_config("mc.methods = " + a.methods, "--methods", c);
    if (!c.base_seed) throw ConfigError("mc needs --seed or mc.base_seed");
    validate(c);
    if (c.replications == 1)
        err << "warning: a single replicate gives means only; two_sigma is undefined\n";

    McConfig mc;
    mc.scenario = c.scenario;
    mc.replications = c.replications;
    mc.base_seed = *c.base_seed;
    mc.methods = c.methods;
    mc.pipeline = c.pipeline;
    mc.threads = c.threads;
    const McSummary summary = run_mc(mc);

    std::error_code ec;
    fs::create_directories(a.out, ec);
    if (ec) throw IoError("cannot create directory '" + a.out + "': " + ec.message());
    const std::string csv_path = (fs::path(a.out) / "summary.csv").string();
    const std::string json_path = (fs::path(a.out) / "summary.json").string();
    const std::string manifest_path = (fs::path(a.out) / "manifest.json").string();

    std::ostringstream csv;
    write_mc_csv(csv, summary);
    write_text_file(csv_path, csv.str());
    write_text_file(json_path, mc_summary_to_json(summary) + "\n");
    ordered_json inputs = ordered_json::object();
    if (!a.config.empty()) inputs["config"] = a.config;
    if (!a.preset.empty()) inputs["preset"] = a.preset;
    ordered_json outputs{{"summary_csv", csv_path}, {"summary_json", json_path},
                         {"manifest", manifest_path}};
    write_text_file(manifest_path,
                    manifest("mc", &c, inputs, outputs, c.base_seed).dump(2) + "\n");

    if (summary.failures > 0)
        err << "warning: " << summary.failures << " of " << summary.replications
            << " replicates failed and were excluded\n";
    out << csv.str();
    out << "order recovery rate: " << summary.order_recovery_rate << "\n";
    return kOk;
}

// ---- compare ----------------------------------------------------------------

struct CompareArgs {
    std::string data, config, out, methods = "proposed,dpca,dipca_diag,ols_arx";
    std::optional<int> lag, eta, ny, nu, delay;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    RunConfig c = resolve("", a.config);
    if (a.lag) c.pipeline.lag = *a.lag;
    c = parse_config("mc.methods = " + a.methods, "--methods", c);
    c.pipeline.validate();
    const TimeSeriesPair series = read_series_csv(a.data);

    std::optional<int> eta = a.eta;
    ordered_json results = ordered_json::array();
    for (Method m : c.methods) {
        if (m != Method::Proposed) continue;
        const IdentificationReport r = identify(series, c.pipeline);
        if (!eta) eta = r.eta_hat;
        results.push_back(ordered_json::parse(report_to_json(r)));
        results.back()["method"] = method_name(m);
    }
    for (Method m : c.methods) {
        if (m == Method::Proposed) continue;
        if (!eta) throw InvalidArgument("--eta is required when 'proposed' is not among --methods");
        if (*eta < 1) throw InvalidArgument("--eta must be at least 1");
        BaselineResult r;
        switch (m) {
            case Method::Dpca: r = dpca(series, *eta); break;
            case Method::DipcaDiag: r = dipca_diag(series, *eta, c.pipeline); break;
            case Method::OlsArx:
                r = ols_arx(series, a.ny.value_or(*eta), a.nu.value_or(*eta), a.delay.value_or(0));
                break;
            case Method::Proposed: break;
        }
        results.push_back(ordered_json::parse(baseline_to_json(r)));
    }
    ordered_json doc{{"data", a.data}, {"results", results}};
    const std::string json = doc.dump(2);
    if (a.out.empty()) {
        out << json << "\n";
        return kOk;
    }
    ensure_parent(a.out);
    write_text_file(a.out, json + "\n");
    const std::string manifest_path = a.out + ".manifest.json";
    ordered_json inputs{{"data", a.data}};
    if (!a.config.empty()) inputs["config"] = a.config;
    write_text_file(manifest_path,
                    manifest("compare", &c, inputs, {{"report", a.out}, {"manifest", manifest_path}},
                             std::nullopt)
                            .dump(2) +
                        "\n");
    out << "wrote " << results.size() << " results to " << a.out << "\n";
    return kOk;
}

// ---- acvf -------------------------------------------------------------------

struct AcvfArgs {
    std::string a;
    double sigma2 = 1.0;
    int max_lag = 5;
};

int cmd_acvf(const AcvfArgs& args, std::ostream& out) {
    const auto coeffs = parse_number_list(args.a);
    const Vector a = Eigen::Map<const Vector>(coeffs.data(), static_cast<Index>(coeffs.size()));
    if (args.max_lag < 0) throw InvalidArgument("--max-lag must be non-negative");
    if (args.sigma2 < 0.0) throw InvalidArgument("--sigma2 must be non-negative");
    const Acvf acvf = yule_walker_acvf(a, args.sigma2, args.max_lag);
    out << "lag,acvf\n";
    char buf[64];
    for (int k = 0; k <= args.max_lag; ++k) {
        std::snprintf(buf, sizeof buf, "%d,%.10g\n", k, acvf.at(k));
        out << buf;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"EIV-ARX identification: order, delay, noise variances and coefficients", "eivarx"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto add_version = [](CLI::App* sub) { sub->set_version_flag("--version", kVersion); };

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Simulate a noisy dataset from a config or preset");
    add_version(s);
    s->add_option("--config", sim.config, "Config file (key = value or JSON)");
    s->add_option("--preset", sim.preset, "Named scenario")->check(CLI::IsMember(preset_names()));
    s->add_option("--out", sim.out, "Output CSV path")->required();
    s->add_option("--seed", sim.seed, "Noise seed (time-derived when omitted)");

    IdentifyArgs id;
    auto* i = app.add_subcommand("identify", "Identify an EIV-ARX model from a CSV dataset");
    add_version(i);
    i->add_option("--data", id.data, "CSV with columns u and y")->required();
    i->add_option("--config", id.config, "Config file with pipeline.* keys");
    i->add_option("--lag", id.lag, "Stacking lag L");
    i->add_option("--alpha", id.alpha, "Significance level of the eigenvalue test");
    i->add_option("--out", id.out, "Report path (stdout when omitted)");

    McArgs mc;
    auto* m = app.add_subcommand("mc", "Run a Monte Carlo study");
    add_version(m);
    m->add_option("--config", mc.config, "Config file (key = value or JSON)");
    m->add_option("--preset", mc.preset, "Named scenario")->check(CLI::IsMember(preset_names()));
    m->add_option("--out", mc.out, "Output directory")->required();
    m->add_option("--seed", mc.seed, "Base seed; replicate r uses seed + r");
    m->add_option("--replications", mc.replications, "Number of replicates");
    m->add_option("--threads", mc.threads, "Worker threads (0 = all cores)");
    m->add_option("--methods", mc.methods, "Comma list: proposed, dpca, dipca_diag, ols_arx");

    CompareArgs cmp;
    auto* c = app.add_subcommand("compare", "Run several estimators on one dataset");
    add_version(c);
    c->add_option("--data", cmp.data, "CSV with columns u and y")->required();
    c->add_option("--config", cmp.config, "Config file with pipeline.* keys");
    c->add_option("--methods", cmp.methods, "Comma list: proposed, dpca, dipca_diag, ols_arx");
    c->add_option("--lag", cmp.lag, "Stacking lag L for the proposed method");
    c->add_option("--eta", cmp.eta, "Model order for baselines (default: proposed eta_hat)");
    c->add_option("--ny", cmp.ny, "OLS output order (default eta)");
    c->add_option("--nu", cmp.nu, "OLS input order (default eta)");
    c->add_option("--delay", cmp.delay, "OLS input delay (default 0)");
    c->add_option("--out", cmp.out, "Output JSON path (stdout when omitted)");

    AcvfArgs ac;
    auto* v = app.add_subcommand("acvf", "Autocovariance of AR noise via Yule-Walker");
    add_version(v);
    v->add_option("--a", ac.a, "AR coefficients a1..an, comma separated (may be empty)")->required();
    v->add_option("--sigma2", ac.sigma2, "Driving noise variance");
    v->add_option("--max-lag", ac.max_lag, "Largest lag to print");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*s) return cmd_simulate(sim, out, err);
        if (*i) return cmd_identify(id, out);
        if (*m) return cmd_mc(mc, out, err);
        if (*c) return cmd_compare(cmp, out);
        if (*v) return cmd_acvf(ac, out);
    } catch (const NoStructureFound& e) {
        err << "error: no constraint structure found: " << e.what() << "\n";
        return kStructure;
    } catch (const StructureError& e) {
        err << "error: " << e.what() << "\n";
        return kStructure;
    } catch (const DegenerateNoise& e) {
        err << "error: " << e.what() << "\n";
        return kStructure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace eivarx::cli
