#include "idl/world.hpp"

#include <cmath>

namespace idl {

World::World(const WorldConfig& cfg) : cfg_(cfg), track_(cfg.track) {
    robot_.pose = track_.pose_at(cfg.start_arclength);
}

ErrorReading World::sense_error() const { return read_error(robot_, cfg_.robot, track_); }

std::vector<double> World::sense_predictors() const {
    return read_predictors(robot_, cfg_.robot, track_);
}

void World::advance(double v_left, double v_right) {
    robot_.v_left = v_left;
    robot_.v_right = v_right;
    step_robot(robot_, cfg_.robot.wheelbase, cfg_.dt);
    ++step_count_;
}

void World::note_on_track(bool on_track) {
    consecutive_off_ = on_track ? 0 : consecutive_off_ + 1;
}

StepRecord run_step(World& world, LayeredNetwork& net, FilterBank& bank, LoopWiring& wiring) {
    StepRecord rec;
    rec.k = world.step_count();
    rec.pose = world.robot().pose;

    const ErrorReading err = world.sense_error();
    rec.e_c = err.e_c;
    rec.on_track = err.on_track;
    world.note_on_track(err.on_track);

    const std::vector<double> p = world.sense_predictors();
    const std::vector<double> u = bank.step(p);
    rec.a_p = net.forward(u);

    if (wiring.eta > 0.0) {
        // The error sensed here is the one the previous motions produced;
        // the filter taps supply the temporal spread that lines it up with
        // earlier predictor activity.
        double e_learn = err.e_c;
        if (wiring.learn_error_levels > 0)
            e_learn = std::round(e_learn * wiring.learn_error_levels) /
                      wiring.learn_error_levels;
        net.backward();
        const double t_r_out = wiring.error_gain_sign * wiring.t_r.step(e_learn);
        net.internal_errors({e_learn, t_r_out});
        net.update(wiring.eta);
    }

    double v_left = 0.0, v_right = 0.0;
    steering(err.e_c, rec.a_p, world.config().steering, v_left, v_right);
    rec.v_left = v_left;
    rec.v_right = v_right;
    world.advance(v_left, v_right);
    return rec;
}

}  // namespace idl
