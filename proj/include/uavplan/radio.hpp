#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "uavplan/criterion.hpp"
#include "uavplan/geometry.hpp"
#include "uavplan/scenario.hpp"

namespace uavplan {

// Linear received powers (mW), one row per UE, one column per transmitter.
// When has_uav is set the last column is the UAV.
struct PowerMatrix {
    int n_ue = 0;
    int n_tx = 0;
    bool has_uav = false;
    std::vector<double> values;

    double at(int ue, int tx) const { return values[ue * n_tx + tx]; }
    double& at(int ue, int tx) { return values[ue * n_tx + tx]; }
};

struct Association {
    std::vector<int> serving;    // per UE: transmitter index
    std::vector<int> cell_size;  // per transmitter: associated UE count
};

struct RateVector {
    std::vector<double> rates;  // bps/Hz per UE
};

struct RewardMap {
    GridSpec grid;
    Criterion criterion = Criterion::pf;
    std::vector<double> value;  // per cell, indexed by GridSpec::cell_index
};

inline constexpr double kDefaultSirCap = 1e10;

// Received power of every (UE, transmitter) link, UAV hovering at uav_xy.
// Without uav_xy the matrix has only the MBS columns (no-UAV baseline).
PowerMatrix compute_link_powers(const NetworkRealization& net,
                                std::optional<Vec2> uav_xy);

// Strongest transmitter per UE; ties go to the lowest index.
Association associate(const PowerMatrix& p);

// Round-robin rates: R_k = log2(1 + SIR_k) / N_ue of the serving cell.
// SIR is serving power over total-minus-self, capped at sir_cap.
RateVector user_rates(const PowerMatrix& p, const Association& a,
                      double sir_cap = kDefaultSirCap);

double objective_value(const RateVector& r, Criterion criterion);

// Objective with the UAV hovering at each cell center. Cells are independent,
// so the parallel result is identical to the sequential one.
RewardMap reward_map(const NetworkRealization& net, const GridSpec& grid,
                     Criterion criterion, int workers = 1);

// Best-MBS SIR (dB) seen by a test receiver at UE height at each cell center,
// without the UAV. Companion heatmap for plotting reward maps in context.
std::vector<double> best_server_sir_db(const NetworkRealization& net,
                                       const GridSpec& grid,
                                       double sir_cap = kDefaultSirCap);

void write_reward_csv(std::ostream& os, const RewardMap& rm);
void write_sir_csv(std::ostream& os, const GridSpec& grid,
                   const std::vector<double>& sir_db);

}  // namespace uavplan
