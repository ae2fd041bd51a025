#include "uavplan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "uavplan/errors.hpp"
#include "uavplan/io.hpp"
#include "uavplan/parallel.hpp"
#include "uavplan/radio.hpp"

namespace uavplan {

namespace {

struct StepStats {
    double mean_rate = 0.0;
    int outage_count = 0;
    double objective = 0.0;
};

StepStats step_stats(const NetworkRealization& net, std::optional<Vec2> uav_xy,
                     double threshold, Criterion criterion) {
    const auto powers = compute_link_powers(net, uav_xy);
    const auto assoc = associate(powers);
    const auto rates = user_rates(powers, assoc);

    StepStats out;
    double sum = 0.0;
    for (const double r : rates.rates) {
        sum += r;
        if (r < threshold) ++out.outage_count;
    }
    out.mean_rate = sum / static_cast<double>(rates.rates.size());
    out.objective = objective_value(rates, criterion);
    return out;
}

TrajectoryMetrics aggregate_steps(const NetworkRealization& net,
                                  const std::vector<Vec2>& positions, double threshold,
                                  Criterion criterion) {
    const int steps = static_cast<int>(positions.size());
    const int n_ue = static_cast<int>(net.ue_positions.size());

    TrajectoryMetrics m;
    m.threshold_bpshz = threshold;
    double capacity_sum = 0.0;
    long outage = 0;
    for (const Vec2& pos : positions) {
        const StepStats s = step_stats(net, pos, threshold, criterion);
        capacity_sum += s.mean_rate;
        outage += s.outage_count;
        m.total_objective += s.objective;
    }
    m.per_ue_capacity = capacity_sum / steps;
    m.outage_probability =
        static_cast<double>(outage) / (static_cast<double>(steps) * n_ue);
    return m;
}

}  // namespace

TrajectoryMetrics evaluate_discrete(const NetworkRealization& net, const Trajectory& traj,
                                    double threshold) {
    const int n = traj.n_steps();
    // Interior states s_0..s_{N-1}; a zero-step mission is its single state.
    std::vector<Vec2> positions;
    if (n == 0) {
        positions.push_back(traj.waypoints.front());
    } else {
        positions.assign(traj.waypoints.begin(), traj.waypoints.begin() + n);
    }
    return aggregate_steps(net, positions, threshold, traj.criterion);
}

TrajectoryMetrics evaluate_smooth(const NetworkRealization& net, const SmoothTrajectory& st,
                                  double threshold) {
    std::vector<Vec2> positions;
    positions.reserve(st.samples.size());
    for (std::size_t i = 0; i + 1 < st.samples.size(); ++i) {
        positions.push_back(st.samples[i].pos);
    }
    if (positions.empty()) positions.push_back(st.samples.front().pos);
    return aggregate_steps(net, positions, threshold, st.criterion);
}

TrajectoryMetrics baseline_metrics(const NetworkRealization& net, double threshold,
                                   int n_steps, Criterion criterion) {
    if (n_steps < 1) throw std::domain_error("baseline_metrics: n_steps must be >= 1");
    const StepStats s = step_stats(net, std::nullopt, threshold, criterion);
    TrajectoryMetrics m;
    m.threshold_bpshz = threshold;
    m.per_ue_capacity = s.mean_rate;
    m.outage_probability =
        static_cast<double>(s.outage_count) / static_cast<double>(net.ue_positions.size());
    m.total_objective = n_steps * s.objective;
    return m;
}

namespace {

int row_index(const SweepConfig& cfg, int ci, int ti, int mi, int si) {
    const int n_t = static_cast<int>(cfg.t_values_s.size());
    const int n_m = static_cast<int>(cfg.n_mbs_values.size());
    const int n_s = static_cast<int>(cfg.seeds.size());
    return ((ci * n_t + ti) * n_m + mi) * n_s + si;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg) {
    if (cfg.seeds.empty() || cfg.t_values_s.empty() || cfg.n_mbs_values.empty() ||
        cfg.criteria.empty()) {
        throw ConfigError("sweep has an empty seeds/t_values_s/n_mbs_values/criteria list");
    }

    SweepReport report;
    report.config = cfg;
    report.rows.resize(cfg.criteria.size() * cfg.t_values_s.size() * cfg.n_mbs_values.size() *
                       cfg.seeds.size());

    // One work unit per (n_mbs, seed): the network is generated once and
    // shared by every criterion and T (paired-seed comparisons).
    const int n_units = static_cast<int>(cfg.n_mbs_values.size() * cfg.seeds.size());
    parallel_for(n_units, cfg.workers, [&](int unit) {
        const int mi = unit / static_cast<int>(cfg.seeds.size());
        const int si = unit % static_cast<int>(cfg.seeds.size());
        const auto net = generate_network(cfg.seeds[si], cfg.n_mbs_values[mi], cfg.n_ue,
                                          cfg.area, cfg.radio);
        for (std::size_t ci = 0; ci < cfg.criteria.size(); ++ci) {
            const Criterion criterion = cfg.criteria[ci];
            const RewardMap rm = reward_map(net, cfg.grid, criterion);
            for (std::size_t ti = 0; ti < cfg.t_values_s.size(); ++ti) {
                SweepRow& row = report.rows[row_index(cfg, static_cast<int>(ci),
                                                      static_cast<int>(ti), mi, si)];
                row.criterion = criterion;
                row.t_s = cfg.t_values_s[ti];
                row.n_mbs = cfg.n_mbs_values[mi];
                row.seed = cfg.seeds[si];

                MissionSpec mission = cfg.mission;
                mission.total_time_s = cfg.t_values_s[ti];
                const auto start = cfg.grid.snap(mission.start, cfg.grid.step_m / 2.0 + 1e-9);
                const auto dest = cfg.grid.snap(mission.dest, cfg.grid.step_m / 2.0 + 1e-9);
                if (!start || !dest || !feasible(*start, *dest, mission.n_steps())) {
                    row.mission_feasible = false;
                    continue;
                }

                const ValueTable vt = solve_dp(rm, mission);
                const Trajectory traj = extract_trajectory(vt, mission, rm);
                row.discrete = evaluate_discrete(net, traj, cfg.outage_threshold_bpshz);
                if (cfg.include_smooth) {
                    if (traj.n_steps() >= 1) {
                        const auto st = smooth_trajectory(traj, cfg.samples_per_interval);
                        row.smooth = evaluate_smooth(net, st, cfg.outage_threshold_bpshz);
                    } else {
                        row.smooth = row.discrete;
                    }
                }
            }
        }
    });

    // Aggregates in deterministic (criterion, T, n_mbs) order, accumulated in
    // seed order.
    for (std::size_t ci = 0; ci < cfg.criteria.size(); ++ci) {
        for (std::size_t ti = 0; ti < cfg.t_values_s.size(); ++ti) {
            for (std::size_t mi = 0; mi < cfg.n_mbs_values.size(); ++mi) {
                SweepAggregate agg;
                agg.criterion = cfg.criteria[ci];
                agg.t_s = cfg.t_values_s[ti];
                agg.n_mbs = cfg.n_mbs_values[mi];
                agg.n_seeds = static_cast<int>(cfg.seeds.size());

                const int first = row_index(cfg, static_cast<int>(ci), static_cast<int>(ti),
                                            static_cast<int>(mi), 0);
                agg.mission_feasible = report.rows[first].mission_feasible;
                if (agg.mission_feasible) {
                    const int n = agg.n_seeds;
                    double sum_cap = 0.0, sum_out = 0.0, sum_obj = 0.0;
                    double sum_scap = 0.0, sum_sout = 0.0;
                    for (int si = 0; si < n; ++si) {
                        const SweepRow& row = report.rows[first + si];
                        sum_cap += row.discrete.per_ue_capacity;
                        sum_out += row.discrete.outage_probability;
                        sum_obj += row.discrete.total_objective;
                        if (row.smooth) {
                            sum_scap += row.smooth->per_ue_capacity;
                            sum_sout += row.smooth->outage_probability;
                        }
                    }
                    agg.mean_capacity = sum_cap / n;
                    agg.mean_outage = sum_out / n;
                    agg.mean_objective = sum_obj / n;
                    if (cfg.include_smooth) {
                        agg.mean_smooth_capacity = sum_scap / n;
                        agg.mean_smooth_outage = sum_sout / n;
                    }
                    if (n > 1) {
                        double var_cap = 0.0, var_out = 0.0;
                        for (int si = 0; si < n; ++si) {
                            const SweepRow& row = report.rows[first + si];
                            const double dc = row.discrete.per_ue_capacity - agg.mean_capacity;
                            const double do_ = row.discrete.outage_probability - agg.mean_outage;
                            var_cap += dc * dc;
                            var_out += do_ * do_;
                        }
                        agg.std_capacity = std::sqrt(var_cap / (n - 1));
                        agg.std_outage = std::sqrt(var_out / (n - 1));
                    }
                }
                report.aggregates.push_back(agg);
            }
        }
    }
    return report;
}

namespace {

using nlohmann::json;

std::vector<double> parse_number_list(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty()) {
        throw ConfigError("config field " + field + " must be a non-empty array of numbers");
    }
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("config field " + field + " must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

SweepConfig load_sweep(const std::string& path) {
    const Scenario s = load_scenario(path);

    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path);
    json root = json::parse(is);

    if (!root["network"].contains("seed")) {
        throw ConfigError("sweep needs a generated network ({seed, n_mbs, n_ue} directives)");
    }

    SweepConfig cfg;
    cfg.area = s.area;
    cfg.grid = s.grid;
    cfg.mission = s.mission;
    cfg.n_ue = static_cast<int>(s.net.ue_positions.size());
    cfg.radio = RadioParams{s.net.fc_mhz,       s.net.p_mbs_dbm,    s.net.p_uav_dbm,
                            s.net.mbs_height_m, s.net.ue_height_m,  s.net.uav_height_m,
                            s.net.force_hata_range};
    cfg.n_mbs_values = {static_cast<int>(s.net.mbs_positions.size())};
    cfg.t_values_s = {160.0, 200.0, 240.0, 280.0, 320.0, 360.0};
    cfg.criteria = {Criterion::pf, Criterion::sumrate, Criterion::fivepse};

    std::uint64_t base_seed = 1;
    int n_seeds = 20;
    if (const auto it = root.find("sweep"); it != root.end()) {
        const json& sw = *it;
        if (sw.contains("seeds")) {
            cfg.seeds.clear();
            for (const double v : parse_number_list(sw["seeds"], "sweep.seeds")) {
                cfg.seeds.push_back(static_cast<std::uint64_t>(v));
            }
        } else {
            if (sw.contains("n_seeds")) n_seeds = sw["n_seeds"].get<int>();
            if (sw.contains("base_seed")) base_seed = sw["base_seed"].get<std::uint64_t>();
        }
        if (sw.contains("t_values_s")) {
            cfg.t_values_s = parse_number_list(sw["t_values_s"], "sweep.t_values_s");
        }
        if (sw.contains("n_mbs_values")) {
            cfg.n_mbs_values.clear();
            for (const double v : parse_number_list(sw["n_mbs_values"], "sweep.n_mbs_values")) {
                if (v < 1) throw ConfigError("sweep.n_mbs_values entries must be >= 1");
                cfg.n_mbs_values.push_back(static_cast<int>(v));
            }
        }
        if (sw.contains("criteria")) {
            const json& cr = sw["criteria"];
            if (!cr.is_array() || cr.empty()) {
                throw ConfigError("sweep.criteria must be a non-empty array");
            }
            cfg.criteria.clear();
            for (const auto& c : cr) {
                cfg.criteria.push_back(criterion_from_string(c.get<std::string>()));
            }
        }
        if (sw.contains("outage_threshold_bpshz")) {
            cfg.outage_threshold_bpshz = sw["outage_threshold_bpshz"].get<double>();
        }
        if (sw.contains("samples_per_interval")) {
            cfg.samples_per_interval = sw["samples_per_interval"].get<int>();
            if (cfg.samples_per_interval < 1) {
                throw ConfigError("sweep.samples_per_interval must be >= 1");
            }
        }
        if (sw.contains("include_smooth")) {
            cfg.include_smooth = sw["include_smooth"].get<bool>();
        }
    }
    if (cfg.seeds.empty()) {
        if (n_seeds < 1) throw ConfigError("sweep.n_seeds must be >= 1");
        for (int i = 0; i < n_seeds; ++i) cfg.seeds.push_back(base_seed + i);
    }

    for (const double t : cfg.t_values_s) {
        if (t < 0.0) throw ConfigError("sweep.t_values_s entries must be >= 0");
        const double ratio = t / cfg.mission.delta_s;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, std::abs(ratio))) {
            throw ConfigError("sweep.t_values_s entry " + format_double(t) +
                              " is not a multiple of mission.delta_s");
        }
    }
    return cfg;
}

namespace {

void metrics_cells(std::ostream& os, const SweepRow& row) {
    if (!row.mission_feasible) {
        os << ",,,,";
        return;
    }
    os << format_double(row.discrete.per_ue_capacity) << ','
       << format_double(row.discrete.outage_probability) << ','
       << format_double(row.discrete.total_objective) << ',';
    if (row.smooth) {
        os << format_double(row.smooth->per_ue_capacity) << ','
           << format_double(row.smooth->outage_probability);
    } else {
        os << ',';
    }
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
    os << "scope,criterion,t_s,n_mbs,seed,feasible,per_ue_capacity,outage_probability,"
          "total_objective,smooth_per_ue_capacity,smooth_outage_probability\n";
    for (const SweepRow& row : report.rows) {
        os << "run," << to_string(row.criterion) << ',' << format_double(row.t_s) << ','
           << row.n_mbs << ',' << row.seed << ',' << (row.mission_feasible ? 1 : 0) << ',';
        metrics_cells(os, row);
        os << '\n';
    }
    for (const SweepAggregate& agg : report.aggregates) {
        os << "mean," << to_string(agg.criterion) << ',' << format_double(agg.t_s) << ','
           << agg.n_mbs << ",," << (agg.mission_feasible ? 1 : 0) << ',';
        if (agg.mission_feasible) {
            os << format_double(agg.mean_capacity) << ',' << format_double(agg.mean_outage)
               << ',' << format_double(agg.mean_objective) << ',';
            if (report.config.include_smooth) {
                os << format_double(agg.mean_smooth_capacity) << ','
                   << format_double(agg.mean_smooth_outage);
            } else {
                os << ',';
            }
        } else {
            os << ",,,,";
        }
        os << '\n';
        os << "std," << to_string(agg.criterion) << ',' << format_double(agg.t_s) << ','
           << agg.n_mbs << ",," << (agg.mission_feasible ? 1 : 0) << ',';
        if (agg.mission_feasible) {
            os << format_double(agg.std_capacity) << ',' << format_double(agg.std_outage)
               << ",,,";
        } else {
            os << ",,,,";
        }
        os << '\n';
    }
}

void write_summary_json(std::ostream& os, const SweepReport& report) {
    const SweepConfig& cfg = report.config;
    nlohmann::ordered_json j;
    j["experiment"] = {
        {"area_m", {cfg.area.width_m, cfg.area.height_m}},
        {"grid_step_m", cfg.grid.step_m},
        {"n_ue", cfg.n_ue},
        {"n_mbs_values", cfg.n_mbs_values},
        {"t_values_s", cfg.t_values_s},
        {"seeds", cfg.seeds},
        {"outage_threshold_bpshz", cfg.outage_threshold_bpshz},
        {"samples_per_interval", cfg.samples_per_interval},
        {"include_smooth", cfg.include_smooth},
        {"seed_pairing", "all criteria and T values share one network realization per seed"},
    };
    j["radio"] = {
        {"fc_mhz", cfg.radio.fc_mhz},
        {"p_mbs_dbm", cfg.radio.p_mbs_dbm},
        {"p_uav_dbm", cfg.radio.p_uav_dbm},
        {"mbs_height_m", cfg.radio.mbs_height_m},
        {"ue_height_m", cfg.radio.ue_height_m},
        {"uav_height_m", cfg.radio.uav_height_m},
    };
    j["mission"] = {
        {"start_m", {cfg.mission.start.x, cfg.mission.start.y}},
        {"dest_m", {cfg.mission.dest.x, cfg.mission.dest.y}},
        {"delta_s", cfg.mission.delta_s},
        {"v_max_mps", cfg.mission.v_max_mps},
    };
    j["aggregates"] = nlohmann::ordered_json::array();
    for (const SweepAggregate& agg : report.aggregates) {
        nlohmann::ordered_json a = {
            {"criterion", to_string(agg.criterion)},
            {"t_s", agg.t_s},
            {"n_mbs", agg.n_mbs},
            {"feasible", agg.mission_feasible},
            {"n_seeds", agg.n_seeds},
        };
        if (agg.mission_feasible) {
            a["mean_per_ue_capacity"] = agg.mean_capacity;
            a["std_per_ue_capacity"] = agg.std_capacity;
            a["mean_outage_probability"] = agg.mean_outage;
            a["std_outage_probability"] = agg.std_outage;
            a["mean_total_objective"] = agg.mean_objective;
            if (cfg.include_smooth) {
                a["mean_smooth_per_ue_capacity"] = agg.mean_smooth_capacity;
                a["mean_smooth_outage_probability"] = agg.mean_smooth_outage;
            }
        }
        j["aggregates"].push_back(a);
    }
    os << j.dump(2) << '\n';
}

}  // namespace uavplan
