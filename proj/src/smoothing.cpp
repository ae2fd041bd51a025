#include "uavplan/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "uavplan/io.hpp"

namespace uavplan {

double bernstein(int i, int n, double t_hat) {
    if (n < 0 || i < 0 || i > n) {
        throw std::domain_error("bernstein: index outside [0, n]");
    }
    if (!(t_hat >= 0.0 && t_hat <= 1.0)) {
        throw std::domain_error("bernstein: t_hat outside [0, 1]");
    }
    double binom = 1.0;
    for (int j = 1; j <= i; ++j) {
        binom *= static_cast<double>(n - i + j) / static_cast<double>(j);
    }
    return binom * std::pow(1.0 - t_hat, n - i) * std::pow(t_hat, i);
}

Vec2 bezier_eval(const BezierCurve& c, double t_hat) {
    if (c.control_points.empty()) {
        throw std::domain_error("bezier_eval: curve has no control points");
    }
    if (!(t_hat >= 0.0 && t_hat <= 1.0)) {
        throw std::domain_error("bezier_eval: t_hat outside [0, 1]");
    }
    // Repeated linear interpolation; the (1-t)*a + t*b form keeps the
    // endpoints exact.
    std::vector<Vec2> pts = c.control_points;
    const double s = 1.0 - t_hat;
    for (std::size_t level = pts.size() - 1; level > 0; --level) {
        for (std::size_t j = 0; j < level; ++j) {
            pts[j] = {s * pts[j].x + t_hat * pts[j + 1].x, s * pts[j].y + t_hat * pts[j + 1].y};
        }
    }
    return pts[0];
}

SmoothTrajectory smooth_trajectory(const Trajectory& traj, int samples_per_interval) {
    const int n = traj.n_steps();
    if (n < 1) {
        throw std::domain_error("smooth_trajectory: need at least two waypoints");
    }
    if (samples_per_interval < 1) {
        throw std::domain_error("smooth_trajectory: samples_per_interval must be >= 1");
    }

    const BezierCurve curve{traj.waypoints};
    const double total_time = traj.timestamps_s.back();
    const int count = n * samples_per_interval;

    SmoothTrajectory st;
    st.samples_per_interval = samples_per_interval;
    st.criterion = traj.criterion;
    st.total_time_s = total_time;
    st.samples.reserve(count + 1);
    for (int j = 0; j <= count; ++j) {
        const double t_hat = static_cast<double>(j) / count;
        st.samples.push_back({total_time * t_hat, bezier_eval(curve, t_hat)});
    }
    return st;
}

double max_ground_speed(const SmoothTrajectory& st) {
    if (st.samples.size() < 2) {
        throw std::domain_error("max_ground_speed: need at least two samples");
    }
    double best = 0.0;
    for (std::size_t i = 1; i < st.samples.size(); ++i) {
        const double dt = st.samples[i].t_s - st.samples[i - 1].t_s;
        const double d = distance(st.samples[i].pos, st.samples[i - 1].pos);
        best = std::max(best, d / dt);
    }
    return best;
}

void write_smooth_csv(std::ostream& os, const SmoothTrajectory& st) {
    os << "t_s,x_m,y_m\n";
    for (const auto& s : st.samples) {
        os << format_double(s.t_s) << ',' << format_double(s.pos.x) << ','
           << format_double(s.pos.y) << '\n';
    }
}

}  // namespace uavplan
