#include "randgrasp/mathkin/arm.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "randgrasp/core/errors.hpp"

namespace randgrasp::mathkin {

void ArmModel::validate() const {
    for (int i = 0; i < kNumJoints; ++i) {
        if (std::abs(links[i].axis.norm() - 1.0) > 1e-9)
            throw core::InvariantViolation("arm model: joint axis " + std::to_string(i + 1) + " is not unit-norm");
        if (!(limits[i].lo < limits[i].hi))
            throw core::InvariantViolation("arm model: joint " + std::to_string(i + 1) + " limits must satisfy lo < hi");
        if (!is_orthonormal(links[i].offset.rotation))
            throw core::InvariantViolation("arm model: link offset rotation " + std::to_string(i + 1) +
                                           " is not orthonormal");
    }
    if (!is_orthonormal(base_pose.rotation) || !is_orthonormal(tool_offset.rotation))
        throw core::InvariantViolation("arm model: base/tool rotation is not orthonormal");
}

ArmModel ArmModel::reference() {
    ArmModel m;
    auto offset_z = [](double z) { return Transform::from_translation(Vec3(0, 0, z)); };

    // yaw - pitch - pitch - roll - pitch - roll, all offsets along local z
    m.links[0] = {offset_z(0.10), Vec3::UnitZ()};
    m.links[1] = {offset_z(0.08), Vec3::UnitY()};
    m.links[2] = {offset_z(0.36), Vec3::UnitY()};
    m.links[3] = {offset_z(0.34), Vec3::UnitZ()};
    m.links[4] = {offset_z(0.05), Vec3::UnitY()};
    m.links[5] = {offset_z(0.05), Vec3::UnitZ()};

    m.limits[0] = {-2.967, 2.967};
    m.limits[1] = {-1.0, 1.8};
    m.limits[2] = {0.1, 2.6};  // one-sided elbow keeps IK on a single branch
    m.limits[3] = {-2.967, 2.967};
    m.limits[4] = {-0.4, 2.2};
    m.limits[5] = {-2.967, 2.967};

    m.base_pose = Transform::identity();
    m.tool_offset = offset_z(0.12);
    return m;
}

Vec6 ArmModel::reference_home() {
    Vec6 q;
    // Pitches sum to pi: gripper points straight down at the table.
    q << 0.0, 0.25, 1.35, 0.0, M_PI - 1.6, 0.0;
    return q;
}

namespace {

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what) {
    std::istringstream ss(text);
    std::vector<double> vals;
    double v;
    while (ss >> v) vals.push_back(v);
    if (vals.size() != expected)
        throw core::CorruptData("arm model: '" + what + "' expects " + std::to_string(expected) + " numbers");
    return vals;
}

Transform parse_pose(const std::string& text, const std::string& what) {
    auto v = parse_numbers(text, 6, what);
    return Transform::from_xyz_rpy(v[0], v[1], v[2], v[3], v[4], v[5]);
}

}  // namespace

ArmModel load_arm_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw core::IoFailure("cannot open arm model file: " + path);

    std::string line;
    if (!std::getline(in, line) || line != "RANDGRASP-ARM v1")
        throw core::CorruptData("arm model: missing 'RANDGRASP-ARM v1' header in " + path);

    ArmModel m;
    bool seen_link[kNumJoints] = {};
    std::string section;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        line = line.substr(first, last - first + 1);

        if (line.front() == '[') {
            if (line.back() != ']') throw core::CorruptData("arm model: malformed section: " + line);
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw core::CorruptData("arm model: expected 'key = value': " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);

        if (section == "base" && key == "pose") {
            m.base_pose = parse_pose(value, "base.pose");
        } else if (section == "tool" && key == "pose") {
            m.tool_offset = parse_pose(value, "tool.pose");
        } else if (section.rfind("link", 0) == 0) {
            const int idx = std::stoi(section.substr(4)) - 1;
            if (idx < 0 || idx >= kNumJoints)
                throw core::CorruptData("arm model: link index out of range: " + section);
            seen_link[idx] = true;
            if (key == "offset") {
                auto v = parse_numbers(value, 3, section + ".offset");
                m.links[idx].offset = Transform::from_translation(Vec3(v[0], v[1], v[2]));
            } else if (key == "axis") {
                auto v = parse_numbers(value, 3, section + ".axis");
                m.links[idx].axis = Vec3(v[0], v[1], v[2]);
            } else if (key == "limits") {
                auto v = parse_numbers(value, 2, section + ".limits");
                m.limits[idx] = {v[0], v[1]};
            } else {
                throw core::CorruptData("arm model: unknown key '" + key + "' in [" + section + "]");
            }
        } else {
            throw core::CorruptData("arm model: unknown key '" + key + "' in [" + section + "]");
        }
    }
    for (int i = 0; i < kNumJoints; ++i)
        if (!seen_link[i]) throw core::CorruptData("arm model: missing [link" + std::to_string(i + 1) + "]");
    m.validate();
    return m;
}

void save_arm_model(const ArmModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw core::IoFailure("cannot write arm model file: " + path);
    out.precision(17);
    out << "RANDGRASP-ARM v1\n";
    auto write_pose = [&](const Transform& t) {
        // rotation back to rpy (extrinsic xyz)
        const Mat3& r = t.rotation;
        const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
        const double roll = std::atan2(r(2, 1), r(2, 2));
        const double yaw = std::atan2(r(1, 0), r(0, 0));
        out << t.translation.x() << " " << t.translation.y() << " " << t.translation.z() << "  " << roll << " "
            << pitch << " " << yaw << "\n";
    };
    out << "[base]\npose = ";
    write_pose(model.base_pose);
    out << "[tool]\npose = ";
    write_pose(model.tool_offset);
    for (int i = 0; i < kNumJoints; ++i) {
        const auto& l = model.links[i];
        out << "[link" << (i + 1) << "]\n";
        out << "offset = " << l.offset.translation.x() << " " << l.offset.translation.y() << " "
            << l.offset.translation.z() << "\n";
        out << "axis = " << l.axis.x() << " " << l.axis.y() << " " << l.axis.z() << "\n";
        out << "limits = " << model.limits[i].lo << " " << model.limits[i].hi << "\n";
    }
    if (!out) throw core::IoFailure("failed writing arm model file: " + path);
}

}  // namespace randgrasp::mathkin
