#include "randgrasp/mathkin/path.hpp"

#include <cmath>
#include <stdexcept>

namespace randgrasp::mathkin {

double path_arclength_fraction(const CartesianPath& path, double t) {
    const double T = path.duration;
    if (T <= 0.0) return 1.0;
    const double x = t / T;  // normalized time
    if (path.profile == VelocityProfile::kConstant) return x;

    // Trapezoid with symmetric ramps of fraction f on each end.
    const double f = kTrapezoidRampFraction;
    const double v_peak = 1.0 / (1.0 - f);  // normalized peak rate
    if (x <= f) return 0.5 * v_peak * x * x / f;
    if (x >= 1.0 - f) {
        const double r = 1.0 - x;
        return 1.0 - 0.5 * v_peak * r * r / f;
    }
    return v_peak * (x - 0.5 * f);
}

Transform interpolate_path(const CartesianPath& path, double t) {
    constexpr double kSlack = 1e-9;
    if (t < -kSlack || t > path.duration + kSlack)
        throw std::out_of_range("interpolate_path: t outside [0, duration]");
    t = std::clamp(t, 0.0, path.duration);

    const double s = path_arclength_fraction(path, t);
    Transform out;
    out.translation = path.start.translation + s * (path.end.translation - path.start.translation);
    out.rotation = slerp_rotation(path.start.rotation, path.end.rotation, s);
    return out;
}

std::optional<std::vector<JointState>> path_to_joint_trajectory(const ArmModel& model,
                                                                const CartesianPath& path,
                                                                const Vec6& q0, double dt,
                                                                const IkOptions& opts) {
    const int n = static_cast<int>(std::ceil(path.duration / dt - 1e-9));
    std::vector<JointState> states;
    states.reserve(static_cast<std::size_t>(n) + 1);
    states.push_back({q0, Vec6::Zero()});

    Vec6 q = q0;
    for (int k = 1; k <= n; ++k) {
        const double t = std::min(k * dt, path.duration);
        const auto solved = solve_ik(model, interpolate_path(path, t), q, opts);
        if (!solved) return std::nullopt;
        const Vec6 q_next = *solved;
        states.push_back({q_next, (q_next - q) / dt});
        q = q_next;
    }
    return states;
}

}  // namespace randgrasp::mathkin
