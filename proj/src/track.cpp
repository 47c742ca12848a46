#include "idl/track.hpp"

#include <algorithm>
#include <cmath>

namespace idl {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double wx = p.x - a.x, wy = p.y - a.y;
    const double vv = vx * vx + vy * vy;
    double t = (vv > 0.0) ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return std::sqrt(dx * dx + dy * dy);
}

Vec2 catmull_rom(Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p3, double t) {
    const double t2 = t * t, t3 = t2 * t;
    auto comp = [&](double a0, double a1, double a2, double a3) {
        return 0.5 * ((2.0 * a1) + (-a0 + a2) * t + (2.0 * a0 - 5.0 * a1 + 4.0 * a2 - a3) * t2 +
                      (-a0 + 3.0 * a1 - 3.0 * a2 + a3) * t3);
    };
    return {comp(p0.x, p1.x, p2.x, p3.x), comp(p0.y, p1.y, p2.y, p3.y)};
}

double smoothstep(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

}  // namespace

Track::Track(const TrackConfig& cfg) : width_(cfg.width), closed_(cfg.closed) {
    if (cfg.waypoints.size() < 4)
        throw ConfigError("Track: need at least 4 waypoints");
    if (!(cfg.width > 0.0)) throw ConfigError("Track: width must be positive");
    if (cfg.samples_per_segment < 2) throw ConfigError("Track: samples_per_segment < 2");

    const auto& wp = cfg.waypoints;
    const std::size_t n = wp.size();
    const std::size_t n_seg = closed_ ? n : n - 1;
    points_.reserve(n_seg * static_cast<std::size_t>(cfg.samples_per_segment) + 1);
    auto at = [&](long i) -> Vec2 {
        if (closed_) return wp[static_cast<std::size_t>((i % static_cast<long>(n) + n) % n)];
        return wp[static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(n) - 1))];
    };
    for (std::size_t s = 0; s < n_seg; ++s) {
        const Vec2 p0 = at(static_cast<long>(s) - 1), p1 = at(static_cast<long>(s)),
                   p2 = at(static_cast<long>(s) + 1), p3 = at(static_cast<long>(s) + 2);
        for (int k = 0; k < cfg.samples_per_segment; ++k) {
            const double t = static_cast<double>(k) / cfg.samples_per_segment;
            points_.push_back(catmull_rom(p0, p1, p2, p3, t));
        }
    }
    if (!closed_) points_.push_back(wp.back());

    arclen_.resize(points_.size() + (closed_ ? 1 : 0), 0.0);
    for (std::size_t i = 1; i < arclen_.size(); ++i) {
        const Vec2 a = points_[i - 1];
        const Vec2 b = points_[i % points_.size()];
        arclen_[i] = arclen_[i - 1] + std::hypot(b.x - a.x, b.y - a.y);
    }

    cutoff_ = 1.5 * width_;
    build_index();
    validate_no_self_intersection();
}

std::size_t Track::n_segments() const { return closed_ ? points_.size() : points_.size() - 1; }

Vec2 Track::segment_start(std::size_t s) const { return points_[s]; }

Vec2 Track::segment_end(std::size_t s) const { return points_[(s + 1) % points_.size()]; }

void Track::build_index() {
    double max_x = points_[0].x, max_y = points_[0].y;
    min_x_ = points_[0].x;
    min_y_ = points_[0].y;
    for (const Vec2& p : points_) {
        min_x_ = std::min(min_x_, p.x);
        min_y_ = std::min(min_y_, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    min_x_ -= cutoff_;
    min_y_ -= cutoff_;
    max_x += cutoff_;
    max_y += cutoff_;
    cell_ = std::max(width_, (std::max(max_x - min_x_, max_y - min_y_)) / 256.0);
    nx_ = std::max(1, static_cast<int>(std::ceil((max_x - min_x_) / cell_)));
    ny_ = std::max(1, static_cast<int>(std::ceil((max_y - min_y_) / cell_)));
    cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});

    for (std::size_t s = 0; s < n_segments(); ++s) {
        const Vec2 a = segment_start(s), b = segment_end(s);
        const double lo_x = std::min(a.x, b.x) - cutoff_, hi_x = std::max(a.x, b.x) + cutoff_;
        const double lo_y = std::min(a.y, b.y) - cutoff_, hi_y = std::max(a.y, b.y) + cutoff_;
        const int cx0 = std::clamp(static_cast<int>((lo_x - min_x_) / cell_), 0, nx_ - 1);
        const int cx1 = std::clamp(static_cast<int>((hi_x - min_x_) / cell_), 0, nx_ - 1);
        const int cy0 = std::clamp(static_cast<int>((lo_y - min_y_) / cell_), 0, ny_ - 1);
        const int cy1 = std::clamp(static_cast<int>((hi_y - min_y_) / cell_), 0, ny_ - 1);
        for (int cy = cy0; cy <= cy1; ++cy)
            for (int cx = cx0; cx <= cx1; ++cx)
                cells_[static_cast<std::size_t>(cy) * nx_ + cx].push_back(static_cast<int>(s));
    }
}

double Track::distance(Vec2 p) const {
    const int cx = static_cast<int>((p.x - min_x_) / cell_);
    const int cy = static_cast<int>((p.y - min_y_) / cell_);
    if (cx < 0 || cx >= nx_ || cy < 0 || cy >= ny_) return cutoff_;
    double best = cutoff_;
    for (int s : cells_[static_cast<std::size_t>(cy) * nx_ + cx])
        best = std::min(best, point_segment_distance(p, segment_start(static_cast<std::size_t>(s)),
                                                     segment_end(static_cast<std::size_t>(s))));
    return best;
}

double Track::line_intensity(Vec2 p) const {
    const double d = distance(p);
    if (d >= width_) return 0.0;
    return 1.0 - smoothstep(d / width_);
}

Pose Track::pose_at(double s) const {
    const double total = length();
    if (closed_) {
        s = std::fmod(s, total);
        if (s < 0.0) s += total;
    } else {
        s = std::clamp(s, 0.0, total);
    }
    const auto it = std::upper_bound(arclen_.begin(), arclen_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::max<long>(0, (it - arclen_.begin()) - 1));
    i = std::min(i, n_segments() - 1);
    const Vec2 a = segment_start(i), b = segment_end(i);
    const double seg_len = std::max(1e-12, arclen_[i + 1] - arclen_[i]);
    const double t = (s - arclen_[i]) / seg_len;
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), std::atan2(b.y - a.y, b.x - a.x)};
}

void Track::validate_no_self_intersection() const {
    // Two stretches of the line that are far apart along the curve must not
    // come closer than a line width in the plane.
    const double min_arc_gap = 6.0 * width_;
    const double min_plane_gap = 2.0 * width_;
    const double total = length();
    const std::size_t stride = std::max<std::size_t>(1, points_.size() / 512);
    for (std::size_t i = 0; i < points_.size(); i += stride) {
        for (std::size_t j = i + 1; j < points_.size(); j += stride) {
            double gap = arclen_[j] - arclen_[i];
            if (closed_) gap = std::min(gap, total - gap);
            if (gap < min_arc_gap) continue;
            const double dx = points_[i].x - points_[j].x;
            const double dy = points_[i].y - points_[j].y;
            if (dx * dx + dy * dy < min_plane_gap * min_plane_gap)
                throw ConfigError("Track: spline self-intersects at line-width scale");
        }
    }
}

std::vector<Vec2> Track::default_waypoints(double scale) {
    // Rounded rectangle realised as a superellipse, so the curvature varies
    // continuously: gently bowed sides, four tighter corners, the two
    // right-hand ones tightest. Curvature joins of circular-arc corners put
    // step transients into the reflex error; this shape keeps the
    // disturbance smooth, and no low-curvature stretch lasts longer than
    // the success window at nominal speed.
    std::vector<Vec2> wp;
    const double a = 28.0, b = 20.0, n = 2.5;
    const double pinch = 0.18;  // shrinks the right-hand corner radii
    const double pi = 3.14159265358979323846;
    const int waypoints = 64;
    for (int k = 0; k < waypoints; ++k) {
        const double t = 2.0 * pi * k / waypoints;
        const double c = std::cos(t), s = std::sin(t);
        const double x = a * std::copysign(std::pow(std::abs(c), 2.0 / n), c);
        const double y = b * std::copysign(std::pow(std::abs(s), 2.0 / n), s);
        const double xa = std::max(x / a, 0.0);
        const double squeeze = 1.0 - pinch * xa * xa * (y / b) * (y / b);
        wp.push_back({scale * x, scale * y * squeeze});
    }
    return wp;
}

}  // namespace idl
