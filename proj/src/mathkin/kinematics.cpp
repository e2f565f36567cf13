#include "randgrasp/mathkin/kinematics.hpp"

#include <Eigen/Cholesky>

#include "randgrasp/core/rng.hpp"

namespace randgrasp::mathkin {

std::array<Transform, kNumJoints + 1> link_frames(const ArmModel& model, const Vec6& angles) {
    std::array<Transform, kNumJoints + 1> frames;
    Transform t = model.base_pose;
    for (int i = 0; i < kNumJoints; ++i) {
        t = compose(t, model.links[i].offset);
        t.rotation = t.rotation * rotation_about_axis(model.links[i].axis, angles[i]);
        frames[i] = t;
    }
    frames[kNumJoints] = compose(t, model.tool_offset);
    return frames;
}

Transform forward_kinematics(const ArmModel& model, const Vec6& angles) {
    Transform t = model.base_pose;
    for (int i = 0; i < kNumJoints; ++i) {
        t = compose(t, model.links[i].offset);
        t.rotation = t.rotation * rotation_about_axis(model.links[i].axis, angles[i]);
    }
    return compose(t, model.tool_offset);
}

Eigen::Matrix<double, 6, 6> jacobian(const ArmModel& model, const Vec6& angles) {
    const auto frames = link_frames(model, angles);
    const Vec3 tip = frames[kNumJoints].translation;
    Eigen::Matrix<double, 6, 6> j;
    for (int i = 0; i < kNumJoints; ++i) {
        const Vec3 axis = frames[i].rotation * model.links[i].axis;
        j.block<3, 1>(0, i) = axis.cross(tip - frames[i].translation);
        j.block<3, 1>(3, i) = axis;
    }
    return j;
}

Vec6 pose_error(const Transform& target, const Transform& current) {
    Vec6 e;
    e.head<3>() = target.translation - current.translation;
    e.tail<3>() = rotation_log(current.rotation, target.rotation);
    return e;
}

namespace {

bool converged(const Vec6& err, const IkOptions& opts) {
    return err.head<3>().norm() <= opts.tol_pos && err.tail<3>().norm() <= opts.tol_rot;
}

// Mixed-unit residual used for the damping schedule (0.2 m per radian).
double residual_score(const Vec6& err) { return err.head<3>().norm() + 0.2 * err.tail<3>().norm(); }

}  // namespace

namespace {

// One damped-least-squares descent from a fixed start. Gives up early when
// the residual has stopped improving.
std::optional<Vec6> dls_attempt(const ArmModel& model, const Transform& target, const Vec6& start,
                                const IkOptions& opts) {
    Vec6 q = model.clamp_to_limits(start);
    Vec6 err = pose_error(target, forward_kinematics(model, q));
    if (converged(err, opts)) return q;

    double lambda = opts.damping;
    double score = residual_score(err);
    int stalled = 0;
    const Eigen::Matrix<double, 6, 6> identity = Eigen::Matrix<double, 6, 6>::Identity();

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        const auto j = jacobian(model, q);
        const Eigen::Matrix<double, 6, 6> jjt = j * j.transpose() + (lambda * lambda) * identity;
        Vec6 dq = j.transpose() * jjt.ldlt().solve(err);
        const double step = dq.norm();
        if (step > 0.5) dq *= 0.5 / step;

        const Vec6 q_new = model.clamp_to_limits(q + dq);
        const Vec6 err_new = pose_error(target, forward_kinematics(model, q_new));
        const double score_new = residual_score(err_new);

        if (score_new < score) {
            q = q_new;
            err = err_new;
            score = score_new;
            lambda = std::max(lambda * 0.5, 1e-5);
            stalled = 0;
        } else {
            lambda = std::min(lambda * 2.0, 1e3);
            if (++stalled > 45) break;
        }
        if (converged(err, opts)) return q;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Vec6> solve_ik(const ArmModel& model, const Transform& target, const Vec6& seed,
                             const IkOptions& opts) {
    if (auto q = dls_attempt(model, target, seed, opts)) return q;

    // Deterministic restart ladder: in-limit pseudo-random starts drawn from a
    // fixed stream, independent of the target, so results stay reproducible.
    core::Rng rng(0x1c4d1a5ULL);
    for (int attempt = 0; attempt < 24; ++attempt) {
        Vec6 start;
        for (int i = 0; i < kNumJoints; ++i) start[i] = rng.uniform(model.limits[i].lo, model.limits[i].hi);
        if (auto q = dls_attempt(model, target, start, opts)) return q;
    }
    return std::nullopt;
}

}  // namespace randgrasp::mathkin
