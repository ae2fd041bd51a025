#pragma once

#include <ostream>
#include <vector>

#include "uavplan/geometry.hpp"
#include "uavplan/planner.hpp"

namespace uavplan {

// Global Bezier curve whose control points are the DP waypoints in order.
struct BezierCurve {
    std::vector<Vec2> control_points;

    int degree() const { return static_cast<int>(control_points.size()) - 1; }
};

struct SmoothSample {
    double t_s = 0.0;
    Vec2 pos;
};

struct SmoothTrajectory {
    std::vector<SmoothSample> samples;  // uniform in normalized time
    int samples_per_interval = 0;
    Criterion criterion = Criterion::pf;
    double total_time_s = 0.0;
};

inline constexpr int kDefaultSamplesPerInterval = 10;

// Bernstein basis weight C(n,i) (1-t)^(n-i) t^i. Throws std::domain_error
// for i outside [0, n] or t outside [0, 1].
double bernstein(int i, int n, double t_hat);

// De Casteljau evaluation; stable at high degree and exact at the endpoints.
// t_hat must lie in [0, 1].
Vec2 bezier_eval(const BezierCurve& c, double t_hat);

// Bezier smoothing of the DP polyline: degree N curve sampled at
// t_hat = j/(N*samples_per_interval), timestamped t = T*t_hat.
// The trajectory needs at least two waypoints.
SmoothTrajectory smooth_trajectory(const Trajectory& traj,
                                   int samples_per_interval = kDefaultSamplesPerInterval);

// Max over consecutive samples of ground distance over elapsed time.
double max_ground_speed(const SmoothTrajectory& st);

void write_smooth_csv(std::ostream& os, const SmoothTrajectory& st);

}  // namespace uavplan
