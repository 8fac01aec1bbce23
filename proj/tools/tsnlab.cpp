// tsnlab: run one experiment or a named sweep and write CSV results.

#include <CLI11.hpp>
#include <iostream>

#include "tsnlab/harness/output.hpp"
#include "tsnlab/metrics/csv.hpp"

namespace {

using namespace tsnlab;
using harness::ConfigError;
using harness::ExperimentConfig;
using metrics::format_number;

constexpr int kExitConfig = 2;

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::optional<std::string> noise;
    bool trace = false;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("config", c.config_path, "Configuration file (key = value lines)")->required();
    cmd->add_option("--seed", c.seed, "Base seed; repetition i uses seed + i");
    cmd->add_option("--out-dir", c.out_dir, "Directory for result files")->capture_default_str();
    cmd->add_option("--noise", c.noise, "Scheduling noise profile")->check(CLI::IsMember({"none", "e3", "d"}));
    cmd->add_flag("--trace", c.trace, "Also write trace.jsonl with every tap record");
    cmd->add_option("--set", c.sets, "Override a config key (key=value), repeatable");
}

ExperimentConfig load(const Common& c) {
    ExperimentConfig cfg = harness::load_config(c.config_path);
    harness::apply_overrides(cfg, c.sets);
    if (c.seed) cfg.seed = *c.seed;
    if (c.noise) cfg.set("noise", *c.noise);
    for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << '\n';
    return cfg;
}

void print_summary(const metrics::Summary& s) {
    std::cout << "rep " << s.repetition << " seed " << s.seed << ": published " << s.published << ", d_sigma "
              << format_number(s.rates.d_sigma) << " %, rtt mean " << format_number(s.rtt.mean_us) << " us, jitter "
              << format_number(s.jitter.mean_abs_dev_us) << " us";
    if (s.l_b_us) std::cout << ", l_B " << format_number(*s.l_b_us) << " us";
    std::cout << '\n';
}

int cmd_run(const Common& c) {
    const ExperimentConfig cfg = load(c);
    std::cout << "config " << cfg.hash() << ": " << cfg.topology << ", host " << cfg.host_qdisc
              << (cfg.bridged() ? ", bridge " + cfg.bridge_qdisc : std::string()) << ", " << cfg.repetitions
              << " repetition(s)\n";
    const auto runs = harness::run_experiment(cfg, c.trace);
    for (const auto& r : runs) print_summary(r.summary);
    for (const auto& p : harness::write_run_outputs(c.out_dir, cfg, runs)) std::cout << "wrote " << p.string() << '\n';
    return 0;
}

int cmd_sweep(const std::string& name, const Common& c) {
    const ExperimentConfig base = load(c);
    const auto sweep = harness::make_sweep(name, base);
    std::vector<ExperimentConfig> cfgs;
    for (const auto& p : sweep.points) cfgs.push_back(p.cfg);
    std::cout << "sweep " << name << ": " << sweep.points.size() << " points x " << base.repetitions
              << " repetition(s)\n";
    const auto runs = harness::run_batch(cfgs, base.threads, c.trace);
    for (const auto& p : harness::write_sweep_outputs(c.out_dir, sweep, runs)) {
        std::cout << "wrote " << p.string() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event testbed for OPC UA PubSub over Linux TSN qdiscs"};
    app.require_subcommand(1);

    Common run_opts, sweep_opts;
    std::string sweep_name;
    auto* run = app.add_subcommand("run", "Run all repetitions of one configuration");
    add_common(run, run_opts);
    auto* sweep = app.add_subcommand("sweep", "Run a named parameter sweep");
    sweep->add_option("name", sweep_name, "Sweep name")->required()->check(CLI::IsMember(harness::sweep_names()));
    add_common(sweep, sweep_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return cmd_run(run_opts);
        return cmd_sweep(sweep_name, sweep_opts);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
