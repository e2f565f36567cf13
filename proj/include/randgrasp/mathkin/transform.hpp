#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace randgrasp::mathkin {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;

// Rigid body pose: orthonormal rotation (det +1) plus translation in meters.
struct Transform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    static Transform identity() { return {}; }

    static Transform from_translation(const Vec3& t) { return {Mat3::Identity(), t}; }

    static Transform from_rotation(const Mat3& r) { return {r, Vec3::Zero()}; }

    // Roll-pitch-yaw (extrinsic XYZ): R = Rz(yaw) * Ry(pitch) * Rx(roll).
    static Transform from_xyz_rpy(double x, double y, double z, double roll, double pitch, double yaw) {
        Mat3 r = (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) * Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
                  Eigen::AngleAxisd(roll, Vec3::UnitX()))
                     .toRotationMatrix();
        return {r, Vec3(x, y, z)};
    }

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

inline Transform compose(const Transform& a, const Transform& b) {
    return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

inline Transform inverse(const Transform& a) {
    Mat3 rt = a.rotation.transpose();
    return {rt, -(rt * a.translation)};
}

// Rodrigues rotation about a unit axis.
inline Mat3 rotation_about_axis(const Vec3& axis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Mat3 k;
    k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
    return Mat3::Identity() + s * k + (1.0 - c) * (k * k);
}

// Minimal rotation (axis * angle) taking `from` onto `to`.
inline Vec3 rotation_log(const Mat3& from, const Mat3& to) {
    Eigen::AngleAxisd aa(to * from.transpose());
    return aa.axis() * aa.angle();
}

inline bool is_orthonormal(const Mat3& r, double tol = 1e-9) {
    return (r * r.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() < tol &&
           std::abs(r.determinant() - 1.0) < tol;
}

// Constant-axis spherical interpolation between two rotations, s in [0, 1].
inline Mat3 slerp_rotation(const Mat3& a, const Mat3& b, double s) {
    Eigen::AngleAxisd aa(b * a.transpose());
    return rotation_about_axis(aa.axis(), aa.angle() * s) * a;
}

}  // namespace randgrasp::mathkin
