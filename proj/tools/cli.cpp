#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pacdyn/experiments.hpp"
#include "pacdyn/io.hpp"
#include "pacdyn/parallel.hpp"
#include "pacdyn/run.hpp"

namespace pacdyn::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

/// Streams records and snapshots to disk as the run produces them.
class DirectoryWriter : public RunObserver {
public:
    DirectoryWriter(fs::path dir, const GridSpec& g, double kappa, SurfacePotentialSpec s, bool quiet,
                    std::ostream& log)
        : dir_(std::move(dir)), g_(g), kappa_(kappa), surface_(s), quiet_(quiet), log_(log) {
        series_.open(dir_ / "series.csv", std::ios::out | std::ios::trunc);
        if (!series_) throw IoError("cannot write " + (dir_ / "series.csv").string());
        write_series_header(series_);
        series_.flush();
    }

    void on_record(const DiagRecord& r) override {
        write_series_row(series_, r);
        series_.flush();
        if (!series_) throw IoError("write failed: series.csv");
        if (!quiet_ && r.step % 1000 == 0) {
            log_ << "step " << r.step << "  t=" << r.time << "  E=" << std::setprecision(10)
                 << r.energy_total << "  residual=" << r.steady_residual << '\n';
        }
    }

    void on_snapshot(const RunState& state) override {
        const std::string name = snapshot_filename(state.step);
        std::ofstream out(dir_ / name, std::ios::out | std::ios::trunc);
        if (!out) throw IoError("cannot write " + (dir_ / name).string());
        write_snapshot(out, g_, state.u, state.t, state.step, kappa_, surface_);
        if (!out) throw IoError("write failed: " + name);
        snapshots_.push_back({{"step", state.step}, {"time", state.t}, {"file", name}});
    }

    const json& snapshots() const { return snapshots_; }

private:
    fs::path dir_;
    const GridSpec& g_;
    double kappa_;
    SurfacePotentialSpec surface_;
    bool quiet_;
    std::ostream& log_;
    std::ofstream series_;
    json snapshots_ = json::array();
};

void write_manifest(const fs::path& dir, const json& manifest) {
    const fs::path tmp = dir / "manifest.json.tmp";
    {
        std::ofstream out(tmp, std::ios::out | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << std::setw(2) << manifest << '\n';
        if (!out) throw IoError("write failed: manifest.json");
    }
    fs::rename(tmp, dir / "manifest.json");
}

std::string describe_defaults(const RunConfig& c) {
    std::ostringstream os;
    os << "N=" << c.N << " dt=" << c.dt << " kappa=" << c.kappa_mode.value << "h"
       << " gamma1=" << c.gamma1 << " gamma2=" << c.gamma2 << " S1=" << c.S1 << " S2=" << c.S2
       << " surface=" << c.surface.name();
    if (c.surface.kind == SurfaceKind::MovingContactLine) {
        os << " theta_s=" << c.surface.theta_s_deg << " gamma_tilde=" << c.surface.gamma_tilde;
    }
    return os.str();
}

} // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        std::ifstream in(opts.config_path);
        if (!in) {
            err << "config error: cannot read " << opts.config_path << '\n';
            return kConfigError;
        }
        std::stringstream text;
        text << in.rdbuf();
        cfg = parse_config(text.str());
        if (opts.out_dir) cfg.output_dir = *opts.out_dir;
        if (opts.max_steps) cfg.max_steps = *opts.max_steps;
        if (opts.snapshot_every) cfg.snapshot_every = *opts.snapshot_every;
        cfg.validate();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidGridError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    const GridSpec g(cfg.N);
    Field initial;
    try {
        initial = initial_field(cfg, g);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    const fs::path dir(cfg.output_dir);
    json manifest;
    manifest["config"] = json::parse(config_to_json(cfg));
    manifest["grid"] = {{"N", g.cells()}, {"h", g.spacing()}};
    manifest["started"] = utc_now();
    manifest["exit_reason"] = "running";

    try {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
        write_manifest(dir, manifest);

        DirectoryWriter writer(dir, g, cfg.model_params().kappa, cfg.surface, opts.quiet, out);
        const RunResult result = run(cfg, std::move(initial), &writer);

        manifest["finished"] = utc_now();
        manifest["exit_reason"] = exit_reason_name(result.reason);
        manifest["steps"] = result.final_state.step;
        manifest["final_time"] = result.final_state.t;
        manifest["final_steady_residual"] = result.final_residual;
        manifest["bound_exceeded"] = result.bound_exceeded;
        manifest["snapshots"] = writer.snapshots();
        if (result.reason == ExitReason::Error) manifest["error"] = result.error;
        write_manifest(dir, manifest);

        if (result.bound_exceeded) {
            err << "warning: |phi| exceeded field_bound " << cfg.field_bound
                << "; energy stability is not guaranteed beyond it\n";
        }
        if (!opts.quiet) {
            out << "exit reason: " << exit_reason_name(result.reason) << " after "
                << result.final_state.step << " steps, residual " << result.final_residual << '\n';
        }
        if (result.reason == ExitReason::Error) {
            err << "solver error: " << result.error << '\n';
            return kSolverError;
        }
        return kOk;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    }
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    const fs::path dir(opts.run_dir);
    std::vector<DiagRecord> series;
    json manifest;
    try {
        std::ifstream mf(dir / "manifest.json");
        if (!mf) throw IoError("missing file " + (dir / "manifest.json").string());
        try {
            manifest = json::parse(mf);
        } catch (const json::exception& e) {
            throw IoError(std::string("corrupt manifest.json: ") + e.what());
        }
        std::ifstream sf(dir / "series.csv");
        if (!sf) throw IoError("missing file " + (dir / "series.csv").string());
        series = read_series(sf);
        if (series.empty()) throw IoError("series.csv has no records");
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    }

    bool ok = true;
    const MassDrift drift = mass_drift(series);
    out << std::setprecision(3) << std::scientific;
    out << "records: " << series.size() << '\n';
    out << "mass drift: bulk " << drift.bulk << ", surface " << drift.surf << " (tolerance "
        << opts.mass_tol << ")\n";
    if (drift.bulk > opts.mass_tol || drift.surf > opts.mass_tol) {
        ok = false;
        for (const auto& r : series) {
            if (std::abs(r.mass_bulk - series.front().mass_bulk) > opts.mass_tol ||
                std::abs(r.mass_surf - series.front().mass_surf) > opts.mass_tol) {
                out << "violation: mass drift first exceeds tolerance at step " << r.step << '\n';
                break;
            }
        }
    }
    const auto rises = audit_energy_decay(series);
    out << "energy increases: " << rises.size() << '\n';
    for (long step : rises) out << "violation: energy increased at step " << step << '\n';
    if (!rises.empty()) ok = false;

    const std::string reason = manifest.value("exit_reason", std::string("unknown"));
    if (reason == "steady" && manifest.contains("config")) {
        const double tol = manifest["config"].value("steady_tol", 0.0);
        if (series.back().steady_residual > tol) {
            out << "violation: exit reason steady but final residual " << series.back().steady_residual
                << " exceeds steady_tol " << tol << '\n';
            ok = false;
        }
    }
    out << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kVerifyFailed;
}

int cmd_list_examples(bool as_json, std::ostream& out) {
    for (const auto& ex : builtin_examples()) {
        if (as_json) {
            json j;
            j["name"] = ex.name;
            j["description"] = ex.description;
            j["defaults"] = json::parse(config_to_json(ex.defaults));
            out << j.dump() << '\n';
        } else {
            out << std::left << std::setw(9) << ex.name << ex.description << '\n'
                << std::setw(9) << "" << describe_defaults(ex.defaults) << '\n';
        }
    }
    return kOk;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"pacdyn: steady states of Cahn-Hilliard with dynamic boundary conditions "
                 "via the projected Allen-Cahn flow"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 verification failed, 2 configuration error, 3 solver failure, 4 I/O error.\n"
        "Environment: PACDYN_THREADS caps internal parallelism.");

    RunOptions run_opts;
    long max_steps = -1;
    long snapshot_every = -1;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Integrate an experiment and write a run directory");
    run_cmd->add_option("--config", run_opts.config_path, "JSON run configuration")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    run_cmd->add_option("--max-steps", max_steps, "Step cap (overrides max_steps)")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--snapshot-every", snapshot_every, "Snapshot interval (overrides snapshot_every)")
        ->check(CLI::PositiveNumber);
    run_cmd->add_flag("--quiet", run_opts.quiet, "Suppress progress output");

    VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "Re-audit mass conservation and energy decay of a run");
    verify_cmd->add_option("--run", verify_opts.run_dir, "Run directory")->required();
    verify_cmd->add_option("--mass-tol", verify_opts.mass_tol, "Allowed absolute mass drift");

    bool as_json = false;
    auto* list_cmd = app.add_subcommand("list-examples", "List the built-in experiments");
    list_cmd->add_flag("--json", as_json, "One JSON object per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (!parallel::apply_thread_env()) {
        std::cerr << "config error: PACDYN_THREADS must be a positive integer\n";
        return kConfigError;
    }

    if (*run_cmd) {
        if (!out_dir.empty()) run_opts.out_dir = out_dir;
        if (max_steps >= 0) run_opts.max_steps = max_steps;
        if (snapshot_every > 0) run_opts.snapshot_every = snapshot_every;
        return cmd_run(run_opts, std::cout, std::cerr);
    }
    if (*verify_cmd) return cmd_verify(verify_opts, std::cout, std::cerr);
    return cmd_list_examples(as_json, std::cout);
}

} // namespace pacdyn::cli
