#include "idl/robot.hpp"

#include <cmath>
#include <stdexcept>

namespace idl {

namespace {

double quantize(double v, int levels) {
    if (levels <= 0) return v;
    return std::round(v * levels) / levels;
}

}  // namespace

Vec2 sensor_position(const Pose& pose, double forward, double lateral) {
    const double c = std::cos(pose.heading), s = std::sin(pose.heading);
    return {pose.x + forward * c - lateral * s, pose.y + forward * s + lateral * c};
}

ErrorReading read_error(const RobotState& robot, const RobotConfig& cfg, const Track& track) {
    const auto& g = cfg.sensors;
    const Vec2 left = sensor_position(robot.pose, g.ground_forward, g.ground_lateral);
    const Vec2 right = sensor_position(robot.pose, g.ground_forward, -g.ground_lateral);
    ErrorReading r;
    r.g_left = track.line_intensity(left);
    r.g_right = track.line_intensity(right);
    r.e_c = r.g_left - r.g_right;
    r.on_track = r.g_left > 0.0 || r.g_right > 0.0;
    return r;
}

std::vector<double> read_predictors(const RobotState& robot, const RobotConfig& cfg,
                                    const Track& track) {
    const auto& g = cfg.sensors;
    if (g.sensors_per_row < 2 || g.sensors_per_row % 2 != 0)
        throw std::invalid_argument("read_predictors: sensors_per_row must be even and >= 2");
    const int half = g.sensors_per_row / 2;
    std::vector<double> p(static_cast<std::size_t>(g.rows) * half);
    for (int row = 0; row < g.rows; ++row) {
        const double forward = g.lookahead + row * g.row_spacing;
        for (int j = 0; j < half; ++j) {
            // sensor j and its mirror sit at +/- the same lateral offset
            const double lateral =
                g.array_width / 2.0 -
                j * (g.array_width / (g.sensors_per_row - 1));
            const double left =
                quantize(track.line_intensity(sensor_position(robot.pose, forward, lateral)),
                         g.array_levels);
            const double right =
                quantize(track.line_intensity(sensor_position(robot.pose, forward, -lateral)),
                         g.array_levels);
            p[static_cast<std::size_t>(row) * half + j] = left - right;
        }
    }
    return p;
}

void steering(double e_c, double a_p, const SteeringConfig& cfg, double& v_left,
              double& v_right) {
    v_right = cfg.v0 + cfg.alpha * e_c + cfg.beta * a_p;
    v_left = cfg.v0 - cfg.alpha * e_c - cfg.beta * a_p;
}

void step_robot(RobotState& robot, double wheelbase, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_robot: dt must be positive");
    if (!(wheelbase > 0.0)) throw std::invalid_argument("step_robot: wheelbase must be positive");
    const double v = 0.5 * (robot.v_left + robot.v_right);
    const double omega = (robot.v_right - robot.v_left) / wheelbase;
    robot.pose.x += v * std::cos(robot.pose.heading) * dt;
    robot.pose.y += v * std::sin(robot.pose.heading) * dt;
    robot.pose.heading += omega * dt;
}

}  // namespace idl
