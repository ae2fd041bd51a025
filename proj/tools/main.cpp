// uavplan: plan and evaluate UAV relay trajectories over a simulated
// cellular downlink. Subcommands: heatmap, plan, sweep.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavplan/errors.hpp"
#include "uavplan/evaluation.hpp"
#include "uavplan/io.hpp"
#include "uavplan/parallel.hpp"
#include "uavplan/planner.hpp"
#include "uavplan/radio.hpp"
#include "uavplan/scenario.hpp"
#include "uavplan/smoothing.hpp"
#include "uavplan/version.hpp"

namespace fs = std::filesystem;
using namespace uavplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string criterion = "pf";
    bool smooth = false;
    int samples_per_interval = kDefaultSamplesPerInterval;
    int workers = 0;  // 0 = default_workers()
    bool force = false;
};

int effective_workers(const CommonOpts& opts) {
    return opts.workers >= 1 ? opts.workers : default_workers();
}

// Refuses to clobber existing results unless --force was given.
void prepare_out_dir(const fs::path& dir, const std::vector<std::string>& outputs, bool force) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    if (force) return;
    std::vector<std::string> names = outputs;
    names.push_back("manifest.json");
    for (const auto& name : names) {
        if (fs::exists(dir / name)) {
            throw IoError("output " + (dir / name).string() +
                          " already exists (use --force to overwrite)");
        }
    }
}

void finish(const fs::path& dir, RunManifest manifest,
            std::chrono::steady_clock::time_point started) {
    manifest.version = std::string(kVersion);
    manifest.duration_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest(dir, manifest);
}

int cmd_heatmap(const CommonOpts& opts) {
    const auto started = std::chrono::steady_clock::now();
    const Criterion criterion = criterion_from_string(opts.criterion);
    const Scenario s = load_scenario(opts.config_path);

    const std::string reward_name = "reward_" + std::string(to_string(criterion)) + ".csv";
    const std::vector<std::string> outputs{reward_name, "sir_heatmap.csv"};
    const fs::path dir(opts.out_dir);
    prepare_out_dir(dir, outputs, opts.force);

    const RewardMap rm = reward_map(s.net, s.grid, criterion, effective_workers(opts));
    std::ostringstream reward_csv;
    write_reward_csv(reward_csv, rm);
    write_text_file_atomic(dir / reward_name, reward_csv.str());

    std::ostringstream sir_csv;
    write_sir_csv(sir_csv, s.grid, best_server_sir_db(s.net, s.grid));
    write_text_file_atomic(dir / "sir_heatmap.csv", sir_csv.str());

    finish(dir, {"heatmap", opts.config_path, {s.net.seed}, "", outputs, 0.0}, started);
    std::cout << "wrote " << (dir / reward_name).string() << " and "
              << (dir / "sir_heatmap.csv").string() << "\n";
    return kExitOk;
}

int cmd_plan(const CommonOpts& opts) {
    const auto started = std::chrono::steady_clock::now();
    const Criterion criterion = criterion_from_string(opts.criterion);
    const Scenario s = load_scenario(opts.config_path);

    const std::string traj_name = "trajectory_" + std::string(to_string(criterion)) + ".csv";
    const std::string smooth_name = "smooth_" + std::string(to_string(criterion)) + ".csv";
    std::vector<std::string> outputs{traj_name};
    if (opts.smooth) outputs.push_back(smooth_name);
    const fs::path dir(opts.out_dir);
    prepare_out_dir(dir, outputs, opts.force);

    const RewardMap rm = reward_map(s.net, s.grid, criterion, effective_workers(opts));
    const ValueTable vt = solve_dp(rm, s.mission);
    const Trajectory traj = extract_trajectory(vt, s.mission, rm);

    std::ostringstream traj_csv;
    write_trajectory_csv(traj_csv, traj);
    write_text_file_atomic(dir / traj_name, traj_csv.str());

    if (opts.smooth) {
        std::ostringstream smooth_csv;
        if (traj.n_steps() >= 1) {
            write_smooth_csv(smooth_csv, smooth_trajectory(traj, opts.samples_per_interval));
        } else {
            // Degenerate zero-interval mission: the curve is the start point.
            smooth_csv << "t_s,x_m,y_m\n"
                       << format_double(0.0) << ',' << format_double(traj.waypoints[0].x) << ','
                       << format_double(traj.waypoints[0].y) << '\n';
        }
        write_text_file_atomic(dir / smooth_name, smooth_csv.str());
    }

    finish(dir, {"plan", opts.config_path, {s.net.seed}, "", outputs, 0.0}, started);
    std::cout << "wrote " << (dir / traj_name).string() << " (total reward "
              << format_double(traj.total_reward) << ")\n";
    return kExitOk;
}

int cmd_sweep(const CommonOpts& opts) {
    const auto started = std::chrono::steady_clock::now();
    SweepConfig cfg = load_sweep(opts.config_path);
    cfg.workers = effective_workers(opts);

    const std::vector<std::string> outputs{"sweep.csv", "summary.json"};
    const fs::path dir(opts.out_dir);
    prepare_out_dir(dir, outputs, opts.force);

    const SweepReport report = run_sweep(cfg);

    std::ostringstream csv;
    write_sweep_csv(csv, report);
    write_text_file_atomic(dir / "sweep.csv", csv.str());

    std::ostringstream summary;
    write_summary_json(summary, report);
    write_text_file_atomic(dir / "summary.json", summary.str());

    finish(dir, {"sweep", opts.config_path, cfg.seeds, "", outputs, 0.0}, started);
    std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << report.rows.size()
              << " rows)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV relay trajectory planner and network simulator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* cmd, bool with_criterion) {
        cmd->add_option("--config", opts.config_path, "scenario config (JSON)")->required();
        cmd->add_option("--out", opts.out_dir, "output directory")->required();
        if (with_criterion) {
            cmd->add_option("--criterion", opts.criterion, "pf|sumrate|fivepse");
        }
        cmd->add_option("--workers", opts.workers, "worker thread count");
        cmd->add_flag("--force", opts.force, "overwrite existing outputs");
    };

    CLI::App* heatmap = app.add_subcommand("heatmap", "reward map + SIR heatmap CSVs");
    add_common(heatmap, true);

    CLI::App* plan = app.add_subcommand("plan", "optimal trajectory CSV");
    add_common(plan, true);
    plan->add_flag("--smooth", opts.smooth, "also write the Bezier-smoothed path");
    plan->add_option("--samples-per-interval", opts.samples_per_interval,
                     "smooth samples per DP interval")
        ->check(CLI::PositiveNumber);

    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep CSV + summary");
    add_common(sweep, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (heatmap->parsed()) return cmd_heatmap(opts);
        if (plan->parsed()) return cmd_plan(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
    } catch (const InfeasibleMissionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
