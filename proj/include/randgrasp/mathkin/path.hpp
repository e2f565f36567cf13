#pragma once

#include <optional>
#include <vector>

#include "randgrasp/mathkin/kinematics.hpp"

namespace randgrasp::mathkin {

enum class VelocityProfile { kConstant, kTrapezoidal };

// Default ramp fraction for the trapezoidal profile (per end).
inline constexpr double kTrapezoidRampFraction = 0.2;

// Straight segment in Cartesian space, traversed in `duration` seconds.
struct CartesianPath {
    Transform start;
    Transform end;
    double duration = 1.0;
    VelocityProfile profile = VelocityProfile::kTrapezoidal;
};

// Pose at time t in [0, duration]; translation stays on the start-end
// segment, rotation is constant-axis slerp. Throws std::out_of_range.
Transform interpolate_path(const CartesianPath& path, double t);

// Normalized arc-length parameter s(t) in [0, 1] for the path's profile.
double path_arclength_fraction(const CartesianPath& path, double t);

struct JointState {
    Vec6 angles = Vec6::Zero();
    Vec6 velocities = Vec6::Zero();  // backward difference; zero at the first state
};

// IK along the path at fixed dt, each solve seeded by the previous solution.
// Length is ceil(duration/dt) + 1. nullopt when any IK solve fails.
std::optional<std::vector<JointState>> path_to_joint_trajectory(const ArmModel& model,
                                                                const CartesianPath& path,
                                                                const Vec6& q0, double dt,
                                                                const IkOptions& opts = {});

}  // namespace randgrasp::mathkin
