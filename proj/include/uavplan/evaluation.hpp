#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uavplan/planner.hpp"
#include "uavplan/scenario.hpp"
#include "uavplan/smoothing.hpp"

namespace uavplan {

inline constexpr double kDefaultOutageThresholdBpsHz = 0.05;

struct TrajectoryMetrics {
    double per_ue_capacity = 0.0;     // mean over steps of mean over UEs of R_k
    double outage_probability = 0.0;  // fraction of (UE, step) pairs below threshold
    double total_objective = 0.0;
    double threshold_bpshz = kDefaultOutageThresholdBpsHz;
};

// Metrics over the mission interior: the UAV sits at waypoint i for
// i = 0..N-1, matching the planner's stage-reward convention. A zero-step
// trajectory is evaluated once at its single waypoint.
TrajectoryMetrics evaluate_discrete(const NetworkRealization& net, const Trajectory& traj,
                                    double threshold = kDefaultOutageThresholdBpsHz);

// Same aggregation with the UAV at each continuous sample position, uniformly
// weighted; the terminal t = T sample is excluded so the coverage window
// matches the discrete [0, T) convention.
TrajectoryMetrics evaluate_smooth(const NetworkRealization& net, const SmoothTrajectory& st,
                                  double threshold = kDefaultOutageThresholdBpsHz);

// No-UAV reference. The network is static, so capacity and outage do not
// depend on n_steps; the accumulated objective scales with it.
TrajectoryMetrics baseline_metrics(const NetworkRealization& net, double threshold,
                                   int n_steps, Criterion criterion = Criterion::pf);

struct SweepConfig {
    AreaSpec area;
    GridSpec grid;
    RadioParams radio;
    MissionSpec mission;  // total_time_s replaced by each swept T
    int n_ue = 100;
    std::vector<std::uint64_t> seeds;
    std::vector<double> t_values_s;
    std::vector<int> n_mbs_values;
    std::vector<Criterion> criteria;
    double outage_threshold_bpshz = kDefaultOutageThresholdBpsHz;
    int samples_per_interval = kDefaultSamplesPerInterval;
    bool include_smooth = true;
    int workers = 1;
};

struct SweepRow {
    Criterion criterion = Criterion::pf;
    double t_s = 0.0;
    int n_mbs = 0;
    std::uint64_t seed = 0;
    bool mission_feasible = true;
    TrajectoryMetrics discrete;
    std::optional<TrajectoryMetrics> smooth;
};

struct SweepAggregate {
    Criterion criterion = Criterion::pf;
    double t_s = 0.0;
    int n_mbs = 0;
    bool mission_feasible = true;
    int n_seeds = 0;
    double mean_capacity = 0.0;
    double std_capacity = 0.0;
    double mean_outage = 0.0;
    double std_outage = 0.0;
    double mean_objective = 0.0;
    double mean_smooth_capacity = 0.0;
    double mean_smooth_outage = 0.0;
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepRow> rows;             // ordered by (criterion, T, n_mbs, seed)
    std::vector<SweepAggregate> aggregates;  // ordered by (criterion, T, n_mbs)
};

// Monte-Carlo sweep with paired seeds: every criterion and T within one seed
// shares the same network realization. Deterministic for any worker count.
SweepReport run_sweep(const SweepConfig& cfg);

// Reads the scenario sections plus the optional "sweep" section.
SweepConfig load_sweep(const std::string& path);

void write_sweep_csv(std::ostream& os, const SweepReport& report);
void write_summary_json(std::ostream& os, const SweepReport& report);

}  // namespace uavplan
