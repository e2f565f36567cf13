#pragma once

#include <array>
#include <string>

#include "randgrasp/mathkin/transform.hpp"

namespace randgrasp::mathkin {

inline constexpr int kNumJoints = 6;

// One revolute joint: a fixed offset from the previous frame, then a rotation
// about `axis` (unit vector, expressed in the post-offset frame).
struct Link {
    Transform offset;
    Vec3 axis = Vec3::UnitZ();
};

struct JointLimits {
    double lo = 0.0;
    double hi = 0.0;
};

struct ArmModel {
    std::array<Link, kNumJoints> links;
    std::array<JointLimits, kNumJoints> limits;
    Transform base_pose;    // arm base w.r.t. world
    Transform tool_offset;  // flange to gripper tip

    // Base raised `height` meters above the table plane (z = 0).
    ArmModel with_base_height(double height) const {
        ArmModel m = *this;
        m.base_pose.translation.z() = height;
        return m;
    }

    Vec6 clamp_to_limits(const Vec6& q) const {
        Vec6 out;
        for (int i = 0; i < kNumJoints; ++i) out[i] = std::clamp(q[i], limits[i].lo, limits[i].hi);
        return out;
    }

    bool within_limits(const Vec6& q, double tol = 1e-12) const {
        for (int i = 0; i < kNumJoints; ++i)
            if (q[i] < limits[i].lo - tol || q[i] > limits[i].hi + tol) return false;
        return true;
    }

    void validate() const;  // throws InvariantViolation on a malformed model

    // The canonical tabletop arm used throughout the engine (~0.9 m reach,
    // tool held pointing down in the home configuration).
    static ArmModel reference();

    // Home joint configuration for ArmModel::reference(); tip above the
    // workspace with the gripper facing the table.
    static Vec6 reference_home();
};

// Arm model text file, magic header "RANDGRASP-ARM v1".
ArmModel load_arm_model(const std::string& path);
void save_arm_model(const ArmModel& model, const std::string& path);

}  // namespace randgrasp::mathkin
