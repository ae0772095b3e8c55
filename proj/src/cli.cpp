#include "zk/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zk/config.hpp"
#include "zk/error.hpp"
#include "zk/experiments.hpp"
#include "zk/kernels.hpp"
#include "zk/report_io.hpp"

namespace zk::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 1;
    std::optional<int> threads;
    std::optional<int> stride;
    int trials = 1000;
    std::vector<int> modes;
};

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ExperimentConfig load_with_overrides(const Options& o) {
    if (o.config.empty()) throw ConfigError("--config is required");
    ExperimentConfig cfg = load_config(o.config);
    if (o.threads) cfg.threads = *o.threads;
    if (o.stride) {
        if (*o.stride < 1) throw ConfigError("--stride must be >= 1");
        cfg.stride = *o.stride;
    }
    if (!o.modes.empty()) cfg.modes = o.modes;
    return cfg;
}

// Collects outputs and writes the manifest last.
class Manifest {
public:
    Manifest(std::string command, const Options& o) : command_(std::move(command)), dir_(o.out), start_(utc_now()) {}

    void set_config(const ExperimentConfig& resolved) { config_ = config_to_json(resolved); }

    void write(const std::string& name, const std::string& contents) {
        fs::create_directories(dir_);
        write_file_atomic(dir_ / name, contents);
        outputs_.push_back((dir_ / name).string());
    }

    void finish(int status) {
        json m;
        m["command"] = command_;
        m["version"] = kVersion;
        m["config"] = config_;
        m["start"] = start_;
        m["end"] = utc_now();
        m["outputs"] = outputs_;
        m["exit_status"] = status;
        fs::create_directories(dir_);
        write_file_atomic(dir_ / "manifest.json", m.dump(2) + "\n");
    }

private:
    std::string command_;
    fs::path dir_;
    std::string start_;
    json config_ = nullptr;
    std::vector<std::string> outputs_;
};

std::string csv_text(std::span<const EnergyReport> reports) {
    std::ostringstream s;
    write_energy_csv(s, reports);
    return s.str();
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
    Manifest manifest("run", o);
    const ExperimentConfig rc = resolve(load_with_overrides(o));
    manifest.set_config(rc);
    kernels::set_threads(rc.threads);

    const StripGrid grid = rc.grid();
    const GridField u0 = make_initial_data(grid, rc.data);
    ImexOptions opts;
    opts.nonlinear = rc.nonlinear;
    const ImexIntegrator integrator(grid, *rc.dt, opts);

    std::vector<EnergyReport> reports;
    int status = kExitOk;
    json summary;
    summary["command"] = "run";
    const auto wall0 = std::chrono::steady_clock::now();
    try {
        const SolverState end = integrator.evolve(integrator.initial_state(u0), *rc.T, rc.stride,
                                                  [&](double t, const ModeField& m) {
                                                      // the last step may overshoot T by less than dt; it is not recorded
                                                      if (t <= *rc.T + 1e-9 * *rc.dt) reports.push_back(energy_report(m, t, rc.k));
                                                  });
        summary["status"] = "ok";
        summary["final_t"] = end.t;
        summary["steps"] = end.step;
    } catch (const BlowUp& e) {
        status = kExitBlowUp;
        summary["status"] = "blowup";
        summary["blowup_time"] = e.time();
        summary["blowup_magnitude"] = e.magnitude();
        err << "zkstrip: numerical blow-up at t = " << e.time() << "\n";
    }
    summary["rows"] = reports.size();
    summary["dt"] = *rc.dt;
    summary["T"] = *rc.T;
    if (reports.size() > 1 && reports.front().l2 > 0.0) summary["l2_balance_residual"] = l2_balance_residual(reports);
    if (!reports.empty()) {
        summary["initial"] = to_json(reports.front());
        summary["final"] = to_json(reports.back());
    }
    summary["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();

    manifest.write("timeseries.csv", csv_text(reports));
    manifest.write("summary.json", summary.dump(2) + "\n");
    manifest.finish(status);
    out << summary.dump(2) << "\n";
    return status;
}

int cmd_check_data(const Options& o, std::ostream& out, std::ostream& err) {
    const ExperimentConfig rc = resolve(load_with_overrides(o));
    kernels::set_threads(rc.threads);
    const StripGrid grid = rc.grid();
    const GridField u0 = make_initial_data(grid, rc.data);

    double cs2 = 0.0;
    if (rc.Cs2) {
        cs2 = *rc.Cs2;
    } else {
        ImexOptions opts;
        opts.nonlinear = rc.nonlinear;
        const ImexIntegrator integrator(grid, *rc.dt, opts);
        try {
            cs2 = estimate_cs2(integrator, u0, std::min(*rc.T, rc.cs_window), rc.stride);
        } catch (const BlowUp&) {
            cs2 = std::numeric_limits<double>::infinity();
        }
    }

    const ConditionReport smallness = check_smallness(u0);
    const ConditionReport decay = check_decay_conditions(u0, rc.k, cs2);
    json report;
    report["smallness"] = to_json(smallness);
    report["decay"] = to_json(decay);
    report["pass"] = smallness.pass && decay.pass;
    out << report.dump(2) << "\n";

    for (const ConditionReport* r : {&smallness, &decay})
        if (const Gate* g = r->first_failure()) err << "zkstrip: gate failed: " << g->name << "\n";
    return smallness.pass && decay.pass ? kExitOk : kExitFailure;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.trials < 1) {
        err << "zkstrip: --trials must be >= 1\n";
        return kExitFailure;
    }
    StripGrid grid = build_grid(std::acos(-1.0), 10.0, 256, 32);
    int threads = 0;
    if (!o.config.empty()) {
        const ExperimentConfig cfg = load_with_overrides(o);
        grid = cfg.grid();
        threads = cfg.threads;
    }
    if (o.threads) threads = *o.threads;
    kernels::set_threads(threads);

    const InequalitySummary s = verify_inequalities(grid, o.seed, o.trials);
    json report = to_json(s);
    report["seed"] = o.seed;
    out << report.dump(2) << "\n";
    if (!s.pass()) err << "zkstrip: " << s.failures << " of " << s.trials << " trials violated an inequality\n";
    return s.pass() ? kExitOk : kExitFailure;
}

int cmd_fit_decay(const Options& o, std::ostream& out, std::ostream&) {
    Manifest manifest("fit-decay", o);
    const ExperimentConfig rc = resolve(load_with_overrides(o));
    manifest.set_config(rc);
    const auto wall0 = std::chrono::steady_clock::now();
    int status = kExitOk;
    try {
        const DecayExperiment d = run_decay_experiment(rc);
        json summary;
        summary["command"] = "fit-decay";
        summary["theoretical_rate"] = theoretical_rate(rc.k, rc.B);
        summary["exp_weighted"] = to_json(d.exp_weighted);
        summary["h2"] = to_json(d.h2);
        summary["rate_ok"] = d.rate_ok;
        summary["w1_max_increase"] = d.w1_max_increase;
        summary["Cs2"] = d.Cs2;
        summary["smallness"] = to_json(d.smallness);
        summary["decay"] = to_json(d.decay);
        if (d.reports.size() > 1 && d.reports.front().l2 > 0.0) summary["l2_balance_residual"] = l2_balance_residual(d.reports);
        summary["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
        manifest.write("timeseries.csv", csv_text(d.reports));
        manifest.write("summary.json", summary.dump(2) + "\n");
        out << summary.dump(2) << "\n";
    } catch (const PreconditionViolation&) {
        manifest.finish(kExitFailure);
        throw;
    } catch (const BlowUp&) {
        manifest.finish(kExitBlowUp);
        throw;
    }
    manifest.finish(status);
    return status;
}

int cmd_converge(const Options& o, std::ostream& out, std::ostream&) {
    Manifest manifest("converge", o);
    const ExperimentConfig cfg = load_with_overrides(o);
    if (cfg.modes.size() < 2) throw InvalidArgument("converge needs at least two mode counts (--modes or config 'modes')");
    const ExperimentConfig rc = resolve(cfg);
    manifest.set_config(rc);
    kernels::set_threads(rc.threads);

    const std::vector<double> diffs = galerkin_convergence(rc, rc.modes);
    json summary;
    summary["command"] = "converge";
    summary["modes"] = rc.modes;
    summary["differences"] = diffs;
    json ratios = json::array();
    for (std::size_t i = 1; i < diffs.size(); ++i) ratios.push_back(diffs[i] > 0.0 ? diffs[i - 1] / diffs[i] : 0.0);
    summary["ratios"] = ratios;
    manifest.write("summary.json", summary.dump(2) + "\n");
    manifest.finish(kExitOk);
    out << summary.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Half-strip ZK simulator", "zkstrip"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Options o;
    auto add_config = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--config", o.config, "experiment config (JSON)");
        if (required) opt->required();
        sub->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "output directory")->capture_default_str(); };

    CLI::App* run = app.add_subcommand("run", "evolve initial data and record energy diagnostics");
    add_config(run, true);
    add_out(run);
    run->add_option("--stride", o.stride, "record every n-th step");

    CLI::App* check = app.add_subcommand("check-data", "evaluate the hypotheses on the initial data");
    add_config(check, true);
    check->add_option("--stride", o.stride, "stride of the preliminary run");

    CLI::App* verify = app.add_subcommand("verify-inequalities", "check the functional inequalities on random fields");
    add_config(verify, false);
    verify->add_option("--seed", o.seed, "generator seed")->capture_default_str();
    verify->add_option("--trials", o.trials, "number of random fields")->capture_default_str();

    CLI::App* fit = app.add_subcommand("fit-decay", "run and fit the exponential decay rate");
    add_config(fit, true);
    add_out(fit);
    fit->add_option("--stride", o.stride, "record every n-th step");

    CLI::App* conv = app.add_subcommand("converge", "compare solutions across mode counts");
    add_config(conv, true);
    add_out(conv);
    conv->add_option("--modes", o.modes, "increasing mode counts")->delimiter(',');

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "zkstrip: " << e.what() << "\n";
        return kExitFailure;
    }

    try {
        if (run->parsed()) return cmd_run(o, out, err);
        if (check->parsed()) return cmd_check_data(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (fit->parsed()) return cmd_fit_decay(o, out, err);
        if (conv->parsed()) return cmd_converge(o, out, err);
    } catch (const PreconditionViolation& e) {
        err << "zkstrip: gate failed: " << e.gate() << " (" << e.what() << ")\n";
        return kExitFailure;
    } catch (const BlowUp& e) {
        err << "zkstrip: numerical blow-up at t = " << e.time() << "\n";
        return kExitBlowUp;
    } catch (const std::exception& e) {
        err << "zkstrip: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return main(args, std::cout, std::cerr);
}

}  // namespace zk::cli
