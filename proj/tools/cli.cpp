#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "malris/channel.hpp"
#include "malris/harness.hpp"
#include "malris/scenario.hpp"

namespace malris::cli {
namespace {

struct ScenarioFlags {
    std::string preset = "paper-default";
    std::string config;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
};

struct Options {
    ScenarioFlags scenario;
    std::string axis;
    std::string out;
    std::optional<long long> trials;
    unsigned threads = 1;
    int count = 1;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
    cmd->add_option("--preset", f.preset, "Named base configuration (see `presets`)")->capture_default_str();
    cmd->add_option("--config", f.config, "JSON configuration file; its keys override the preset");
    cmd->add_option("--seed", f.seed, "Master RNG seed (overrides config)");
    cmd->add_option("--set", f.overrides, "Override one configuration key, key=value (repeatable)")
        ->allow_extra_args(false);
}

Scenario build_scenario(const ScenarioFlags& f) {
    Scenario s = f.config.empty() ? preset(f.preset) : load_scenario_file(f.config, f.preset);
    for (const auto& kv : f.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ScenarioError("--set expects key=value (got '" + kv + "')");
        s = apply_override(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (f.seed) s = apply_override(s, "seed", std::to_string(*f.seed));
    validate(s);
    return s;
}

// Runs `body` against either the --out file or `out`.
template <typename Body>
void with_output(const std::string& path, std::ostream& out, Body&& body) {
    if (path.empty()) {
        body(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    body(file);
    file.flush();
    if (!file) throw std::runtime_error("write to " + path + " failed");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int cmd_presets(std::ostream& out) {
    for (const auto& name : preset_names()) out << describe_preset(name) << '\n';
    return 0;
}

int cmd_run(const Options& o, std::ostream& out) {
    const Scenario s = build_scenario(o.scenario);
    Rng rng(derive_trial_seed(s.seed, 0, 0));
    const auto records = run_timeline(s, rng);
    with_output(o.out, out, [&](std::ostream& os) {
        os << "slot,attack_active,gamma_u,gamma_e,c_u,c_e,c_s,ber\n";
        for (const auto& r : records) {
            os << r.slot << ',' << (r.attack_active ? 1 : 0) << ',' << fmt(r.gamma_u) << ',' << fmt(r.gamma_e)
               << ',' << fmt(r.c_u) << ',' << fmt(r.c_e) << ',' << fmt(r.c_s) << ',' << fmt(r.ber) << '\n';
        }
    });
    return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const SweepAxis axis = parse_axis(o.axis);
    Scenario s = build_scenario(o.scenario);
    if (o.trials) s = apply_override(s, "n_sim", std::to_string(*o.trials));
    const auto& grid = axis == SweepAxis::rho ? s.rho_grid : s.beta_grid;
    const SweepResult result = run_sweep(s, axis, grid, s.n_sim, o.threads);
    with_output(o.out, out, [&](std::ostream& os) { write_csv(result, os); });
    return 0;
}

int cmd_dump_channels(const Options& o, std::ostream& out) {
    const Scenario s = build_scenario(o.scenario);
    Rng rng(derive_trial_seed(s.seed, 0, 0));
    with_output(o.out, out, [&](std::ostream& os) {
        for (int i = 0; i < o.count; ++i) {
            os << "# channel set " << i << '\n';
            write_channel_dump(generate_channel_set(s, rng), os);
        }
    });
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo link-level simulator for a RIS-assisted downlink with a compromised RIS", "malris"};
    app.require_subcommand(1);
    Options o;

    app.add_subcommand("presets", "List named configurations");

    auto* run_cmd = app.add_subcommand("run", "Run one timeline and print per-slot records");
    add_scenario_flags(run_cmd, o.scenario);
    run_cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");

    auto* sweep = app.add_subcommand("sweep", "Sweep rho or beta and write aggregate CSV");
    add_scenario_flags(sweep, o.scenario);
    sweep->add_option("--axis", o.axis, "Swept attack parameter")->required()->check(CLI::IsMember({"rho", "beta"}));
    sweep->add_option("--out", o.out, "Output CSV path (default: stdout)");
    sweep->add_option("--trials", o.trials, "Monte Carlo trials per grid point (overrides n_sim)");
    sweep->add_option("--threads", o.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));

    auto* dump = app.add_subcommand("dump-channels", "Write channel realisations as text matrices");
    add_scenario_flags(dump, o.scenario);
    dump->add_option("--out", o.out, "Output path (default: stdout)");
    dump->add_option("--count", o.count, "Number of consecutive channel sets")->capture_default_str()->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (app.got_subcommand("presets")) return cmd_presets(out);
        if (app.got_subcommand("run")) return cmd_run(o, out);
        if (app.got_subcommand("sweep")) return cmd_sweep(o, out);
        if (app.got_subcommand("dump-channels")) return cmd_dump_channels(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace malris::cli
