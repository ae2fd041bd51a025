#include "uavplan/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "uavplan/errors.hpp"
#include "uavplan/propagation.hpp"

namespace uavplan {

namespace {

// Platform-independent uniform double in [0, 1): top 53 bits of the draw.
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

constexpr double kDivisibilityTol = 1e-9;
constexpr double kSnapTol = 1e-9;

bool is_integer_multiple(double value, double step, int& count) {
    if (!(step > 0.0)) return false;
    const double ratio = value / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > kDivisibilityTol * std::max(1.0, std::abs(ratio))) {
        return false;
    }
    count = static_cast<int>(rounded);
    return true;
}

}  // namespace

std::optional<Cell> GridSpec::snap(const Vec2& p, double tol_m) const {
    if (!(step_m > 0.0)) return std::nullopt;
    const Cell c{static_cast<int>(std::lround((p.x - origin.x) / step_m)),
                 static_cast<int>(std::lround((p.y - origin.y) / step_m))};
    if (!contains(c)) return std::nullopt;
    if (distance(p, cell_center(c)) > tol_m) return std::nullopt;
    return c;
}

int MissionSpec::n_steps() const {
    return static_cast<int>(std::lround(total_time_s / delta_s));
}

NetworkRealization generate_network(std::uint64_t seed, int n_mbs, int n_ue,
                                    const AreaSpec& area, const RadioParams& radio) {
    if (n_mbs < 1) throw ConfigError("network.n_mbs must be >= 1");
    if (n_ue < 1) throw ConfigError("network.n_ue must be >= 1");
    if (!(area.width_m > 0.0) || !(area.height_m > 0.0)) {
        throw ConfigError("area dimensions must be positive");
    }

    NetworkRealization net;
    net.seed = seed;
    net.mbs_height_m = radio.mbs_height_m;
    net.ue_height_m = radio.ue_height_m;
    net.uav_height_m = radio.uav_height_m;
    net.p_mbs_dbm = radio.p_mbs_dbm;
    net.p_uav_dbm = radio.p_uav_dbm;
    net.fc_mhz = radio.fc_mhz;
    net.force_hata_range = radio.force_hata_range;

    std::mt19937_64 rng(seed);
    net.mbs_positions.reserve(n_mbs);
    for (int i = 0; i < n_mbs; ++i) {
        const double x = unit_double(rng) * area.width_m;
        const double y = unit_double(rng) * area.height_m;
        net.mbs_positions.push_back({x, y});
    }
    net.ue_positions.reserve(n_ue);
    for (int i = 0; i < n_ue; ++i) {
        const double x = unit_double(rng) * area.width_m;
        const double y = unit_double(rng) * area.height_m;
        net.ue_positions.push_back({x, y});
    }
    return net;
}

GridSpec make_grid(const AreaSpec& area, double step_m) {
    if (!(area.width_m > 0.0) || !(area.height_m > 0.0)) {
        throw ConfigError("area dimensions must be positive");
    }
    if (!(step_m > 0.0)) throw ConfigError("grid.step_m must be positive");

    int kx = 0;
    int ky = 0;
    if (!is_integer_multiple(area.width_m, step_m, kx)) {
        throw ConfigError("grid.step_m does not divide area.width_m");
    }
    if (!is_integer_multiple(area.height_m, step_m, ky)) {
        throw ConfigError("grid.step_m does not divide area.height_m");
    }

    GridSpec grid;
    grid.origin = {0.0, 0.0};
    grid.step_m = step_m;
    grid.nx = kx + 1;
    grid.ny = ky + 1;
    if (grid.nx < 2 || grid.ny < 2) {
        throw ConfigError("grid must have at least 2 cells per axis");
    }
    return grid;
}

void validate_scenario(Scenario& s) {
    if (!(s.area.width_m > 0.0) || !(s.area.height_m > 0.0)) {
        throw ConfigError("area dimensions must be positive");
    }
    if (s.net.mbs_positions.empty()) throw ConfigError("network has no MBS");
    if (s.net.ue_positions.empty()) throw ConfigError("network has no UE");
    if (!(s.net.mbs_height_m > 0.0) || !(s.net.ue_height_m > 0.0) ||
        !(s.net.uav_height_m > 0.0)) {
        throw ConfigError("radio heights must be positive");
    }
    if (s.net.uav_height_m <= s.net.ue_height_m) {
        throw ConfigError("radio.uav_height_m must exceed radio.ue_height_m");
    }
    if (!s.net.force_hata_range &&
        (s.net.fc_mhz < kHataMinFcMhz || s.net.fc_mhz > kHataMaxFcMhz)) {
        throw ConfigError(
            "radio.fc_mhz outside the Hata range [150, 1500]; set radio.force_hata_range");
    }

    auto inside = [&](const Vec2& p) {
        return p.x >= 0.0 && p.x <= s.area.width_m && p.y >= 0.0 && p.y <= s.area.height_m;
    };
    for (const auto& p : s.net.mbs_positions) {
        if (!inside(p)) throw ConfigError("network.mbs_positions_m outside the area");
    }
    for (const auto& p : s.net.ue_positions) {
        if (!inside(p)) throw ConfigError("network.ue_positions_m outside the area");
    }

    if (!(s.mission.delta_s > 0.0)) throw ConfigError("mission.delta_s must be positive");
    if (!(s.mission.v_max_mps > 0.0)) throw ConfigError("mission.v_max_mps must be positive");
    if (s.mission.total_time_s < 0.0) throw ConfigError("mission.total_time_s must be >= 0");

    int n = 0;
    if (!is_integer_multiple(s.mission.total_time_s, s.mission.delta_s, n)) {
        throw ConfigError("mission.total_time_s is not a multiple of mission.delta_s");
    }

    // The diagonal control covers step*sqrt(2) meters per interval; the
    // mission speed limit must admit it or constraint (3b) breaks on-lattice.
    if (s.grid.step_m * std::sqrt(2.0) > s.mission.v_max_mps * s.mission.delta_s + 1e-6) {
        throw ConfigError("mission.v_max_mps * mission.delta_s cannot cover a diagonal grid move");
    }

    const double snap_tol = s.grid.step_m / 2.0 + kSnapTol;
    const auto start = s.grid.snap(s.mission.start, snap_tol);
    if (!start) throw ConfigError("mission.start_m is not on the grid (snap exceeds step/2)");
    const auto dest = s.grid.snap(s.mission.dest, snap_tol);
    if (!dest) throw ConfigError("mission.dest_m is not on the grid (snap exceeds step/2)");
    s.mission.start = s.grid.cell_center(*start);
    s.mission.dest = s.grid.cell_center(*dest);

    const int cheb = std::max(std::abs(start->ix - dest->ix), std::abs(start->iy - dest->iy));
    if (cheb > n) {
        throw InfeasibleMissionError(
            "mission needs at least " + std::to_string(cheb) + " intervals (Chebyshev grid distance), got " +
            std::to_string(n));
    }
}

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const char* context) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError("missing config field " + std::string(context) + "." + key);
    }
    return *it;
}

double require_number(const json& j, const char* key, const char* context) {
    const json& v = require(j, key, context);
    if (!v.is_number()) {
        throw ConfigError("config field " + std::string(context) + "." + key +
                          " must be a number");
    }
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw ConfigError("config field " + std::string(key) + " must be a number");
    return it->get<double>();
}

Vec2 require_point(const json& j, const char* key, const char* context) {
    const json& v = require(j, key, context);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError("config field " + std::string(context) + "." + key +
                          " must be [x_m, y_m]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<Vec2> parse_points(const json& v, const std::string& field) {
    if (!v.is_array()) throw ConfigError("config field " + field + " must be an array of [x, y]");
    std::vector<Vec2> out;
    out.reserve(v.size());
    for (const auto& p : v) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ConfigError("config field " + field + " must contain [x_m, y_m] pairs");
        }
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        throw IoError("config file not found: " + path);
    }
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path);

    json root;
    try {
        root = json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }

    Scenario s;
    const json& area = require(root, "area", "");
    s.area.width_m = require_number(area, "width_m", "area");
    s.area.height_m = require_number(area, "height_m", "area");

    const json& grid = require(root, "grid", "");
    s.grid = make_grid(s.area, require_number(grid, "step_m", "grid"));

    RadioParams radio;
    if (const auto it = root.find("radio"); it != root.end()) {
        const json& r = *it;
        radio.fc_mhz = number_or(r, "fc_mhz", radio.fc_mhz);
        radio.p_mbs_dbm = number_or(r, "p_mbs_dbm", radio.p_mbs_dbm);
        radio.p_uav_dbm = number_or(r, "p_uav_dbm", radio.p_uav_dbm);
        radio.mbs_height_m = number_or(r, "mbs_height_m", radio.mbs_height_m);
        radio.ue_height_m = number_or(r, "ue_height_m", radio.ue_height_m);
        radio.uav_height_m = number_or(r, "uav_height_m", radio.uav_height_m);
        if (const auto f = r.find("force_hata_range"); f != r.end()) {
            if (!f->is_boolean()) throw ConfigError("radio.force_hata_range must be a boolean");
            radio.force_hata_range = f->get<bool>();
        }
    }

    const json& network = require(root, "network", "");
    if (network.contains("mbs_positions_m") || network.contains("ue_positions_m")) {
        s.net.mbs_positions =
            parse_points(require(network, "mbs_positions_m", "network"), "network.mbs_positions_m");
        s.net.ue_positions =
            parse_points(require(network, "ue_positions_m", "network"), "network.ue_positions_m");
        s.net.mbs_height_m = radio.mbs_height_m;
        s.net.ue_height_m = radio.ue_height_m;
        s.net.uav_height_m = radio.uav_height_m;
        s.net.p_mbs_dbm = radio.p_mbs_dbm;
        s.net.p_uav_dbm = radio.p_uav_dbm;
        s.net.fc_mhz = radio.fc_mhz;
        s.net.force_hata_range = radio.force_hata_range;
        s.net.seed = 0;
    } else {
        const double seed = require_number(network, "seed", "network");
        const double n_mbs = require_number(network, "n_mbs", "network");
        const double n_ue = require_number(network, "n_ue", "network");
        s.net = generate_network(static_cast<std::uint64_t>(seed), static_cast<int>(n_mbs),
                                 static_cast<int>(n_ue), s.area, radio);
    }

    const json& mission = require(root, "mission", "");
    s.mission.start = require_point(mission, "start_m", "mission");
    s.mission.dest = require_point(mission, "dest_m", "mission");
    s.mission.total_time_s = require_number(mission, "total_time_s", "mission");
    s.mission.delta_s = number_or(mission, "delta_s", s.mission.delta_s);
    s.mission.v_max_mps = number_or(mission, "v_max_mps", s.mission.v_max_mps);

    validate_scenario(s);
    return s;
}

}  // namespace uavplan
