#pragma once

#include <vector>

#include "idl/transfer_function.hpp"

namespace idl {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;
};

struct TrackConfig {
    std::vector<Vec2> waypoints;
    double width = 2.0;  // half-width of the line's intensity profile
    bool closed = true;
    int samples_per_segment = 24;
};

/// The line to follow: a Catmull-Rom spline through the waypoints, sampled
/// to a polyline once at construction. Intensity is 1 on the centerline and
/// falls off smoothly to 0 at `width`; queries go through a uniform spatial
/// hash so a step only ever touches nearby segments.
class Track {
public:
    explicit Track(const TrackConfig& cfg);

    /// Smoothstep falloff of the perpendicular distance to the centerline.
    double line_intensity(Vec2 p) const;

    /// Distance to the sampled centerline. Returns the cutoff value when no
    /// segment lies within the indexed neighbourhood (always >= width).
    double distance(Vec2 p) const;

    double length() const { return arclen_.back(); }
    bool closed() const { return closed_; }
    double width() const { return width_; }

    /// Pose on the centerline at arclength s, heading along the tangent.
    Pose pose_at(double s) const;

    const std::vector<Vec2>& polyline() const { return points_; }

    /// Waypoints of the default course: a rounded rectangle with two tight
    /// and two gentle corners, optionally scaled.
    static std::vector<Vec2> default_waypoints(double scale = 1.0);

private:
    std::vector<Vec2> points_;   // sampled polyline (closed: last != first)
    std::vector<double> arclen_; // cumulative, arclen_[i] = length up to points_[i]
    double width_;
    bool closed_;
    double cutoff_;

    // uniform grid over the bounding box
    double cell_ = 1.0;
    double min_x_ = 0.0, min_y_ = 0.0;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<int>> cells_;  // segment indices per cell

    std::size_t n_segments() const;
    Vec2 segment_start(std::size_t s) const;
    Vec2 segment_end(std::size_t s) const;
    void build_index();
    void validate_no_self_intersection() const;
};

}  // namespace idl
