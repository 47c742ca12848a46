#pragma once

#include <optional>

#include "idl/filter_bank.hpp"
#include "idl/network.hpp"
#include "idl/robot.hpp"
#include "idl/track.hpp"

namespace idl {

struct WorldConfig {
    TrackConfig track;
    RobotConfig robot;
    SteeringConfig steering;
    double dt = 0.01;
    int off_track_limit = 200;
    double start_arclength = 0.0;
};

struct StepRecord {
    int k = 0;
    double e_c = 0.0;
    double a_p = 0.0;
    double v_left = 0.0;
    double v_right = 0.0;
    Pose pose;
    bool on_track = true;
};

/// Track + robot + step bookkeeping for one trial. The robot starts on the
/// centerline heading along the track.
class World {
public:
    explicit World(const WorldConfig& cfg);

    const Track& track() const { return track_; }
    const RobotState& robot() const { return robot_; }
    const WorldConfig& config() const { return cfg_; }
    int step_count() const { return step_count_; }

    ErrorReading sense_error() const;
    std::vector<double> sense_predictors() const;

    /// Apply wheel speeds and integrate one time step.
    void advance(double v_left, double v_right);

    /// True once the line has been lost for more than off_track_limit
    /// consecutive steps.
    bool line_lost() const { return consecutive_off_ > cfg_.off_track_limit; }

    void note_on_track(bool on_track);

private:
    WorldConfig cfg_;
    Track track_;
    RobotState robot_;
    int step_count_ = 0;
    int consecutive_off_ = 0;
};

/// Per-trial learning wiring: learning rate, the error path transfer
/// function handed to the learner (unity by default) and its sign.
struct LoopWiring {
    double eta = 0.0;
    double error_gain_sign = 1.0;
    /// The learner reads the error through an ADC: values are rounded to
    /// multiples of 1/learn_error_levels (0 = analogue). Sub-quantum errors
    /// train nothing, which parks the weights once the loop has converged;
    /// steering always uses the analogue value.
    int learn_error_levels = 16;
    TransferFunction t_r;  // defaults to unity
};

/// One full control/learning cycle: sense the error left by the previous
/// motion, read and filter the predictors, produce the action, train, steer,
/// move. Returns the record of the step taken.
StepRecord run_step(World& world, LayeredNetwork& net, FilterBank& bank, LoopWiring& wiring);

}  // namespace idl
