#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "uavplan/radio.hpp"
#include "uavplan/scenario.hpp"

namespace uavplan {

enum class ActionLabel : std::uint8_t {
    stay,
    east,
    north,
    west,
    south,
    northeast,
    northwest,
    southwest,
    southeast,
};

// One of the nine admissible controls: hover, axis move, or diagonal move.
// v/heading carry the nominal control values; (dx, dy) is the displacement
// snapped to the lattice (one cell per axis per interval).
struct ControlAction {
    ActionLabel label = ActionLabel::stay;
    double v_mps = 0.0;
    double heading_rad = 0.0;
    int dx = 0;
    int dy = 0;
};

inline constexpr int kActionCount = 9;
inline constexpr double kAxisSpeedMps = 12.5;
inline constexpr double kDiagonalSpeedMps = 17.7;

// Canonical order: stay, E, N, W, S, NE, NW, SW, SE. All tie-breaks follow it.
const std::array<ControlAction, kActionCount>& control_set();

std::string_view action_label_string(ActionLabel label);

// Next cell after one interval, or nullopt when the move exits the grid.
std::optional<Cell> apply_control(Cell cell, const ControlAction& action,
                                  const GridSpec& grid);

// True iff dest is reachable from start in exactly n_steps intervals
// (Chebyshev grid distance <= n_steps; stays absorb any slack).
bool feasible(Cell start, Cell dest, int n_steps);

// Backward Bellman cost-to-go over (time index, cell).
// j has (n_steps+1) slices; unreachable states hold kUnreachable and the
// recursion never mixes that sentinel with finite rewards. policy has n_steps
// slices of canonical action indices (kNoAction where infeasible).
struct ValueTable {
    static constexpr double kUnreachable = -std::numeric_limits<double>::infinity();
    static constexpr std::int8_t kNoAction = -1;

    int n_steps = 0;
    GridSpec grid;
    Cell start;
    Cell dest;
    std::vector<double> j;
    std::vector<std::int8_t> policy;

    double j_at(int step, int cell) const { return j[step * grid.cell_count() + cell]; }
    std::int8_t policy_at(int step, int cell) const {
        return policy[step * grid.cell_count() + cell];
    }
};

struct Trajectory {
    std::vector<Vec2> waypoints;       // n_steps+1 cell centers
    std::vector<double> timestamps_s;  // i * delta
    std::vector<ControlAction> controls;
    std::vector<double> stage_rewards;  // reward of the departing state s_i
    Criterion criterion = Criterion::pf;
    double total_reward = 0.0;

    int n_steps() const { return static_cast<int>(controls.size()); }
};

// Solves J(s_i) = reward(s_i) + max_u J(s_{i+1}) backwards from the terminal
// condition J(dest) = 0. Throws InfeasibleMissionError when the start state
// cannot reach dest in time.
ValueTable solve_dp(const RewardMap& rm, const MissionSpec& mission);

// Forward readout of the stored argmax policy.
Trajectory extract_trajectory(const ValueTable& vt, const MissionSpec& mission,
                              const RewardMap& rm);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace uavplan
