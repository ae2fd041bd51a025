#include "uavplan/propagation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavplan {

PathLossCoefficients hata_coefficients(double fc_mhz, double hb_m, double hm_m,
                                       Environment env, bool force_range) {
    if (!(fc_mhz > 0.0) || !(hb_m > 0.0) || !(hm_m > 0.0)) {
        throw std::domain_error("hata_coefficients: frequency and heights must be positive");
    }
    if (!force_range && (fc_mhz < kHataMinFcMhz || fc_mhz > kHataMaxFcMhz)) {
        throw std::domain_error("hata_coefficients: fc=" + std::to_string(fc_mhz) +
                                " MHz outside model range [150, 1500]");
    }

    const double log_fc = std::log10(fc_mhz);
    // Small/medium-city mobile antenna correction.
    const double a_hm = (1.1 * log_fc - 0.7) * hm_m - (1.56 * log_fc - 0.8);

    PathLossCoefficients c;
    c.a_db = 69.55 + 26.16 * log_fc - 13.82 * std::log10(hb_m) - a_hm;
    c.b_db_per_decade = 44.9 - 6.55 * std::log10(hb_m);

    switch (env) {
        case Environment::suburban: {
            const double l = std::log10(fc_mhz / 28.0);
            c.c_db = -2.0 * l * l - 5.4;
            break;
        }
    }

    if (!(c.b_db_per_decade > 0.0)) {
        throw std::domain_error("hata_coefficients: non-positive distance slope");
    }
    return c;
}

double link_distance_km(const Vec3& a, const Vec3& b) {
    return distance(a, b) / 1000.0;
}

double path_loss_db(const PathLossCoefficients& c, double d_km, double d_min_km) {
    if (!(d_km > 0.0)) {
        throw std::domain_error("path_loss_db: distance must be positive");
    }
    const double d = std::max(d_km, d_min_km);
    return c.a_db + c.b_db_per_decade * std::log10(d) + c.c_db;
}

double received_power_mw(double tx_power_dbm, double pl_db) {
    return std::pow(10.0, (tx_power_dbm - pl_db) / 10.0);
}

double link_power_mw(const Link& link, const PathLossCoefficients& c, double d_min_km) {
    const double d_km = link_distance_km(link.tx_position, link.rx_position);
    return received_power_mw(link.tx_power_dbm, path_loss_db(c, d_km, d_min_km));
}

}  // namespace uavplan
