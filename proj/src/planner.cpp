#include "uavplan/planner.hpp"

#include <cmath>
#include <numbers>

#include "uavplan/errors.hpp"
#include "uavplan/io.hpp"

namespace uavplan {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<ControlAction, kActionCount> make_control_set() {
    const double ax = kAxisSpeedMps;
    const double dg = kDiagonalSpeedMps;
    return {{
        {ActionLabel::stay, 0.0, 0.0, 0, 0},
        {ActionLabel::east, ax, 0.0, 1, 0},
        {ActionLabel::north, ax, kPi / 2.0, 0, 1},
        {ActionLabel::west, ax, kPi, -1, 0},
        {ActionLabel::south, ax, 3.0 * kPi / 2.0, 0, -1},
        {ActionLabel::northeast, dg, kPi / 4.0, 1, 1},
        {ActionLabel::northwest, dg, 3.0 * kPi / 4.0, -1, 1},
        {ActionLabel::southwest, dg, 5.0 * kPi / 4.0, -1, -1},
        {ActionLabel::southeast, dg, 7.0 * kPi / 4.0, 1, -1},
    }};
}

Cell snap_or_throw(const GridSpec& grid, const Vec2& p, const char* what) {
    const auto cell = grid.snap(p, grid.step_m / 2.0 + 1e-9);
    if (!cell) {
        throw ConfigError(std::string(what) + " does not lie on the reward-map grid");
    }
    return *cell;
}

}  // namespace

const std::array<ControlAction, kActionCount>& control_set() {
    static const auto actions = make_control_set();
    return actions;
}

std::string_view action_label_string(ActionLabel label) {
    switch (label) {
        case ActionLabel::stay: return "stay";
        case ActionLabel::east: return "E";
        case ActionLabel::north: return "N";
        case ActionLabel::west: return "W";
        case ActionLabel::south: return "S";
        case ActionLabel::northeast: return "NE";
        case ActionLabel::northwest: return "NW";
        case ActionLabel::southwest: return "SW";
        case ActionLabel::southeast: return "SE";
    }
    return "stay";
}

std::optional<Cell> apply_control(Cell cell, const ControlAction& action, const GridSpec& grid) {
    const Cell next{cell.ix + action.dx, cell.iy + action.dy};
    if (!grid.contains(next)) return std::nullopt;
    return next;
}

bool feasible(Cell start, Cell dest, int n_steps) {
    const int cheb = std::max(std::abs(start.ix - dest.ix), std::abs(start.iy - dest.iy));
    return cheb <= n_steps;
}

ValueTable solve_dp(const RewardMap& rm, const MissionSpec& mission) {
    const GridSpec& grid = rm.grid;
    const int cells = grid.cell_count();
    const int n = mission.n_steps();

    ValueTable vt;
    vt.n_steps = n;
    vt.grid = grid;
    vt.start = snap_or_throw(grid, mission.start, "mission start");
    vt.dest = snap_or_throw(grid, mission.dest, "mission dest");
    vt.j.assign(static_cast<std::size_t>(n + 1) * cells, ValueTable::kUnreachable);
    vt.policy.assign(static_cast<std::size_t>(n) * cells, ValueTable::kNoAction);

    vt.j[static_cast<std::size_t>(n) * cells + grid.cell_index(vt.dest)] = 0.0;

    const auto& actions = control_set();
    for (int i = n - 1; i >= 0; --i) {
        const double* next_slice = vt.j.data() + static_cast<std::size_t>(i + 1) * cells;
        double* slice = vt.j.data() + static_cast<std::size_t>(i) * cells;
        std::int8_t* pol = vt.policy.data() + static_cast<std::size_t>(i) * cells;
        for (int iy = 0; iy < grid.ny; ++iy) {
            for (int ix = 0; ix < grid.nx; ++ix) {
                const Cell cell{ix, iy};
                const int ci = grid.cell_index(cell);
                double best = ValueTable::kUnreachable;
                std::int8_t best_action = ValueTable::kNoAction;
                for (int a = 0; a < kActionCount; ++a) {
                    const auto next = apply_control(cell, actions[a], grid);
                    if (!next) continue;
                    const double cost_to_go = next_slice[grid.cell_index(*next)];
                    if (cost_to_go == ValueTable::kUnreachable) continue;
                    const double candidate = rm.value[ci] + cost_to_go;
                    if (best_action == ValueTable::kNoAction || candidate > best) {
                        best = candidate;
                        best_action = static_cast<std::int8_t>(a);
                    }
                }
                if (best_action != ValueTable::kNoAction) {
                    slice[ci] = best;
                    pol[ci] = best_action;
                }
            }
        }
    }

    if (vt.j_at(0, grid.cell_index(vt.start)) == ValueTable::kUnreachable) {
        const int cheb =
            std::max(std::abs(vt.start.ix - vt.dest.ix), std::abs(vt.start.iy - vt.dest.iy));
        throw InfeasibleMissionError("mission infeasible: Chebyshev grid distance " +
                                     std::to_string(cheb) + " exceeds " + std::to_string(n) +
                                     " intervals");
    }
    return vt;
}

Trajectory extract_trajectory(const ValueTable& vt, const MissionSpec& mission,
                              const RewardMap& rm) {
    const GridSpec& grid = vt.grid;
    const int n = vt.n_steps;
    if (vt.j_at(0, grid.cell_index(vt.start)) == ValueTable::kUnreachable) {
        throw InfeasibleMissionError("mission infeasible: start state is unreachable");
    }

    Trajectory traj;
    traj.criterion = rm.criterion;
    traj.waypoints.reserve(n + 1);
    traj.timestamps_s.reserve(n + 1);
    traj.controls.reserve(n);
    traj.stage_rewards.reserve(n);

    Cell cell = vt.start;
    for (int i = 0; i < n; ++i) {
        const int ci = grid.cell_index(cell);
        const std::int8_t a = vt.policy_at(i, ci);
        traj.waypoints.push_back(grid.cell_center(cell));
        traj.timestamps_s.push_back(i * mission.delta_s);
        traj.controls.push_back(control_set()[a]);
        traj.stage_rewards.push_back(rm.value[ci]);
        cell = *apply_control(cell, control_set()[a], grid);
    }
    traj.waypoints.push_back(grid.cell_center(cell));
    traj.timestamps_s.push_back(n * mission.delta_s);

    // Right fold matches the Bellman recursion's addition order, so the total
    // equals J at the start state bit for bit.
    double total = 0.0;
    for (int i = n - 1; i >= 0; --i) total = traj.stage_rewards[i] + total;
    traj.total_reward = total;
    return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "i,t_s,x_m,y_m,action_label,v_mps,heading_rad,stage_reward\n";
    const int n = traj.n_steps();
    for (int i = 0; i <= n; ++i) {
        os << i << ',' << format_double(traj.timestamps_s[i]) << ','
           << format_double(traj.waypoints[i].x) << ',' << format_double(traj.waypoints[i].y)
           << ',';
        if (i < n) {
            const ControlAction& a = traj.controls[i];
            os << action_label_string(a.label) << ',' << format_double(a.v_mps) << ','
               << format_double(a.heading_rad) << ',' << format_double(traj.stage_rewards[i]);
        } else {
            os << ",0,0,0";
        }
        os << '\n';
    }
}

}  // namespace uavplan
