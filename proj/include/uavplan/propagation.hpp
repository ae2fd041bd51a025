#pragma once

#include "uavplan/geometry.hpp"

namespace uavplan {

enum class Environment { suburban };

// Okumura-Hata loss: xi(d) = A + B*log10(d_km) + C.
struct PathLossCoefficients {
    double a_db = 0.0;
    double b_db_per_decade = 0.0;
    double c_db = 0.0;
};

struct Link {
    Vec3 tx_position;
    Vec3 rx_position;
    double tx_power_dbm = 0.0;
};

inline constexpr double kHataMinFcMhz = 150.0;
inline constexpr double kHataMaxFcMhz = 1500.0;
inline constexpr double kDefaultMinDistanceKm = 0.01;

// Hata small/medium-city coefficients with the suburban correction folded
// into C. fc outside [150, 1500] MHz throws std::domain_error unless
// force_range is set.
PathLossCoefficients hata_coefficients(double fc_mhz, double hb_m, double hm_m,
                                       Environment env = Environment::suburban,
                                       bool force_range = false);

// 3D Euclidean distance in km (inputs in meters).
double link_distance_km(const Vec3& a, const Vec3& b);

// Distances below d_min_km are clamped before the log. d_km must be > 0.
double path_loss_db(const PathLossCoefficients& c, double d_km,
                    double d_min_km = kDefaultMinDistanceKm);

// Linear received power in mW.
double received_power_mw(double tx_power_dbm, double pl_db);

// Received power over one link.
double link_power_mw(const Link& link, const PathLossCoefficients& c,
                     double d_min_km = kDefaultMinDistanceKm);

}  // namespace uavplan
