#include "uavplan/radio.hpp"

#include <algorithm>
#include <cmath>

#include "uavplan/io.hpp"
#include "uavplan/parallel.hpp"
#include "uavplan/propagation.hpp"

namespace uavplan {

PowerMatrix compute_link_powers(const NetworkRealization& net, std::optional<Vec2> uav_xy) {
    const int n_ue = static_cast<int>(net.ue_positions.size());
    const int n_mbs = static_cast<int>(net.mbs_positions.size());
    const bool uav = uav_xy.has_value();

    PowerMatrix p;
    p.n_ue = n_ue;
    p.n_tx = n_mbs + (uav ? 1 : 0);
    p.has_uav = uav;
    p.values.resize(static_cast<std::size_t>(n_ue) * p.n_tx);

    const auto mbs_coef = hata_coefficients(net.fc_mhz, net.mbs_height_m, net.ue_height_m,
                                            Environment::suburban, net.force_hata_range);
    PathLossCoefficients uav_coef;
    if (uav) {
        uav_coef = hata_coefficients(net.fc_mhz, net.uav_height_m, net.ue_height_m,
                                     Environment::suburban, net.force_hata_range);
    }

    for (int k = 0; k < n_ue; ++k) {
        const Vec3 rx{net.ue_positions[k].x, net.ue_positions[k].y, net.ue_height_m};
        for (int m = 0; m < n_mbs; ++m) {
            const Link link{{net.mbs_positions[m].x, net.mbs_positions[m].y, net.mbs_height_m},
                            rx,
                            net.p_mbs_dbm};
            p.at(k, m) = link_power_mw(link, mbs_coef);
        }
        if (uav) {
            const Link link{{uav_xy->x, uav_xy->y, net.uav_height_m}, rx, net.p_uav_dbm};
            p.at(k, n_mbs) = link_power_mw(link, uav_coef);
        }
    }
    return p;
}

Association associate(const PowerMatrix& p) {
    Association a;
    a.serving.resize(p.n_ue);
    a.cell_size.assign(p.n_tx, 0);
    for (int k = 0; k < p.n_ue; ++k) {
        int best = 0;
        for (int j = 1; j < p.n_tx; ++j) {
            if (p.at(k, j) > p.at(k, best)) best = j;
        }
        a.serving[k] = best;
        ++a.cell_size[best];
    }
    return a;
}

RateVector user_rates(const PowerMatrix& p, const Association& a, double sir_cap) {
    RateVector r;
    r.rates.resize(p.n_ue);
    for (int k = 0; k < p.n_ue; ++k) {
        double total = 0.0;
        for (int j = 0; j < p.n_tx; ++j) total += p.at(k, j);
        const double serving = p.at(k, a.serving[k]);
        const double interference = total - serving;
        double sir = interference > 0.0 ? serving / interference : sir_cap;
        sir = std::min(sir, sir_cap);
        r.rates[k] = std::log2(1.0 + sir) / a.cell_size[a.serving[k]];
    }
    return r;
}

double objective_value(const RateVector& r, Criterion criterion) {
    const int k = static_cast<int>(r.rates.size());
    switch (criterion) {
        case Criterion::pf: {
            double sum = 0.0;
            for (const double rate : r.rates) sum += std::log10(rate);
            return sum;
        }
        case Criterion::sumrate: {
            double sum = 0.0;
            for (const double rate : r.rates) sum += rate;
            return sum;
        }
        case Criterion::fivepse: {
            // Lower order statistic at rank ceil(0.05 K), exact in integers.
            const int rank = (5 * k + 99) / 100;
            std::vector<double> copy = r.rates;
            std::nth_element(copy.begin(), copy.begin() + (rank - 1), copy.end());
            return copy[rank - 1];
        }
    }
    return 0.0;
}

RewardMap reward_map(const NetworkRealization& net, const GridSpec& grid,
                     Criterion criterion, int workers) {
    RewardMap rm;
    rm.grid = grid;
    rm.criterion = criterion;
    rm.value.resize(grid.cell_count());
    parallel_for(grid.cell_count(), workers, [&](int cell) {
        const auto p = compute_link_powers(net, grid.cell_center(cell));
        const auto a = associate(p);
        rm.value[cell] = objective_value(user_rates(p, a), criterion);
    });
    return rm;
}

std::vector<double> best_server_sir_db(const NetworkRealization& net, const GridSpec& grid,
                                       double sir_cap) {
    const int n_mbs = static_cast<int>(net.mbs_positions.size());
    const auto coef = hata_coefficients(net.fc_mhz, net.mbs_height_m, net.ue_height_m,
                                        Environment::suburban, net.force_hata_range);
    std::vector<double> out(grid.cell_count());
    for (int cell = 0; cell < grid.cell_count(); ++cell) {
        const Vec2 c = grid.cell_center(cell);
        const Vec3 rx{c.x, c.y, net.ue_height_m};
        double best = 0.0;
        double total = 0.0;
        for (int m = 0; m < n_mbs; ++m) {
            const Link link{{net.mbs_positions[m].x, net.mbs_positions[m].y, net.mbs_height_m},
                            rx,
                            net.p_mbs_dbm};
            const double s = link_power_mw(link, coef);
            total += s;
            best = std::max(best, s);
        }
        const double interference = total - best;
        const double sir = interference > 0.0 ? std::min(best / interference, sir_cap) : sir_cap;
        out[cell] = 10.0 * std::log10(sir);
    }
    return out;
}

void write_reward_csv(std::ostream& os, const RewardMap& rm) {
    os << "x_m,y_m,value\n";
    for (int cell = 0; cell < rm.grid.cell_count(); ++cell) {
        const Vec2 c = rm.grid.cell_center(cell);
        os << format_double(c.x) << ',' << format_double(c.y) << ','
           << format_double(rm.value[cell]) << '\n';
    }
}

void write_sir_csv(std::ostream& os, const GridSpec& grid, const std::vector<double>& sir_db) {
    os << "x_m,y_m,sir_db\n";
    for (int cell = 0; cell < grid.cell_count(); ++cell) {
        const Vec2 c = grid.cell_center(cell);
        os << format_double(c.x) << ',' << format_double(c.y) << ','
           << format_double(sir_db[cell]) << '\n';
    }
}

}  // namespace uavplan
