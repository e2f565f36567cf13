#pragma once

#include <array>
#include <optional>

#include "randgrasp/mathkin/arm.hpp"

namespace randgrasp::mathkin {

// World pose of the gripper tip. Pure; joint limits are not enforced here.
Transform forward_kinematics(const ArmModel& model, const Vec6& angles);

// World poses of each joint frame (after its rotation) plus the tip pose in
// the last slot. Used by the renderer to draw the arm and by the Jacobian.
std::array<Transform, kNumJoints + 1> link_frames(const ArmModel& model, const Vec6& angles);

// Geometric Jacobian of the tip: rows 0-2 linear (m/s per rad/s), rows 3-5
// angular (rad/s per rad/s); column j is the tip twist from unit rate on j.
Eigen::Matrix<double, 6, 6> jacobian(const ArmModel& model, const Vec6& angles);

struct IkOptions {
    double tol_pos = 1e-4;   // meters
    double tol_rot = 1e-3;   // radians
    int max_iters = 200;
    double damping = 1e-2;   // initial lambda; halved on improvement, doubled otherwise
};

// Damped-least-squares IK. Returns nullopt when the iteration budget is
// exhausted (unreachable target or stalled descent); deterministic.
std::optional<Vec6> solve_ik(const ArmModel& model, const Transform& target, const Vec6& seed,
                             const IkOptions& opts = {});

// Position+orientation error as a 6-vector [dp; axis*angle].
Vec6 pose_error(const Transform& target, const Transform& current);

}  // namespace randgrasp::mathkin
