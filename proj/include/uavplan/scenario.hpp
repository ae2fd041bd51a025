#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavplan/geometry.hpp"

namespace uavplan {

struct AreaSpec {
    double width_m = 0.0;
    double height_m = 0.0;
};

struct Cell {
    int ix = 0;
    int iy = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
};

// Regular lattice of candidate UAV hover positions. Cell (ix, iy) sits at
// origin + (ix*step, iy*step); an nx x ny grid spans the whole area edge to
// edge (nx = width/step + 1).
struct GridSpec {
    Vec2 origin;
    double step_m = 0.0;
    int nx = 0;
    int ny = 0;

    int cell_count() const { return nx * ny; }
    int cell_index(Cell c) const { return c.iy * nx + c.ix; }
    bool contains(Cell c) const {
        return c.ix >= 0 && c.ix < nx && c.iy >= 0 && c.iy < ny;
    }
    Vec2 cell_center(Cell c) const {
        return {origin.x + c.ix * step_m, origin.y + c.iy * step_m};
    }
    Vec2 cell_center(int index) const {
        return cell_center(Cell{index % nx, index / nx});
    }

    // Nearest cell if the point lies within tol_m of its center.
    std::optional<Cell> snap(const Vec2& p, double tol_m) const;
};

struct RadioParams {
    double fc_mhz = 1500.0;
    double p_mbs_dbm = 46.0;
    double p_uav_dbm = 30.0;
    double mbs_height_m = 30.0;
    double ue_height_m = 2.0;
    double uav_height_m = 120.0;
    bool force_hata_range = false;
};

// One Monte-Carlo draw of the network: fixed transmitter/user geometry plus
// the radio parameters shared by every link.
struct NetworkRealization {
    std::vector<Vec2> mbs_positions;
    std::vector<Vec2> ue_positions;
    double mbs_height_m = 30.0;
    double ue_height_m = 2.0;
    double uav_height_m = 120.0;
    double p_mbs_dbm = 46.0;
    double p_uav_dbm = 30.0;
    double fc_mhz = 1500.0;
    bool force_hata_range = false;
    std::uint64_t seed = 0;
};

struct MissionSpec {
    Vec2 start;
    Vec2 dest;
    double total_time_s = 0.0;
    double delta_s = 8.0;
    double v_max_mps = 17.7;

    // T/delta; valid only after validation has checked divisibility.
    int n_steps() const;
};

struct Scenario {
    AreaSpec area;
    GridSpec grid;
    NetworkRealization net;
    MissionSpec mission;
};

// Uniform placement of fixed counts (a PPP conditioned on its count).
// Pure function of (seed, params): the same inputs give a bit-identical
// realization.
NetworkRealization generate_network(std::uint64_t seed, int n_mbs, int n_ue,
                                    const AreaSpec& area, const RadioParams& radio);

// Lattice covering the area; step must divide both dimensions.
GridSpec make_grid(const AreaSpec& area, double step_m);

// Checks positivity, containment, time divisibility, endpoint snap and
// reachability. Throws ConfigError with the offending field named. Start and
// dest are snapped to their nearest cell centers (at most step/2 away).
void validate_scenario(Scenario& s);

// Parses the JSON scenario config and validates every invariant.
// Throws IoError when the file is missing/unreadable, ConfigError otherwise.
Scenario load_scenario(const std::string& path);

}  // namespace uavplan
