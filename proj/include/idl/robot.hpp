#pragma once

#include <vector>

#include "idl/track.hpp"

namespace idl {

/// Placement of the ground-sensor pair and the forward-looking array,
/// in robot frame (x forward, y to the left).
// Defaults reproduce the reference behaviour: a sluggish reflex whose corner
// droop dominates its error, predictors that lead the ground sensors by a
// few steps, and an array just wide enough that only strong excursions
// reach the outermost pair.
struct SensorGeometry {
    double ground_forward = 5.0;   // forward offset of the error sensors
    double ground_lateral = 1.9;   // +/- lateral offset of the pair
    double lookahead = 6.4;        // forward distance of the first array row
    double row_spacing = 1.2;      // extra forward distance per further row
    int sensors_per_row = 16;      // even; mirrored pairs
    int rows = 1;                  // 1 = sensor strip, >1 = camera-style grid
    double array_width = 3.5;      // lateral span of one row
    /// Forward-array ADC resolution: readings are rounded to multiples of
    /// 1/levels, 0 keeps the analogue value.
    int array_levels = 256;
};

struct RobotConfig {
    double wheelbase = 16.0;
    SensorGeometry sensors;
};

struct RobotState {
    Pose pose;
    double v_left = 0.0;
    double v_right = 0.0;
};

struct SteeringConfig {
    double v0 = 40.0;
    double alpha = 200.0;
    double beta = 100.0;
};

struct ErrorReading {
    double e_c = 0.0;
    double g_left = 0.0;
    double g_right = 0.0;
    bool on_track = false;
};

/// Sensor position in world frame.
Vec2 sensor_position(const Pose& pose, double forward, double lateral);

/// e_c = G_left - G_right; positive when the robot sits right of the line.
ErrorReading read_error(const RobotState& robot, const RobotConfig& cfg, const Track& track);

/// Antisymmetric intensity differences of mirrored sensor pairs, outermost
/// pair first within each row, rows nearest-first. Size = rows *
/// sensors_per_row / 2.
std::vector<double> read_predictors(const RobotState& robot, const RobotConfig& cfg,
                                    const Track& track);

/// Wheel speeds from the fixed reflex law plus the learned action.
void steering(double e_c, double a_p, const SteeringConfig& cfg, double& v_left,
              double& v_right);

/// One explicit-Euler step of the differential-drive kinematics.
void step_robot(RobotState& robot, double wheelbase, double dt);

}  // namespace idl
