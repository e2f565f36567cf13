#pragma once

#include <optional>

#include "randgrasp/scene/scene.hpp"

namespace randgrasp::render {

using mathkin::Transform;
using mathkin::Vec3;

struct Camera {
    Transform pose;  // camera-to-world; +x right, +y down, +z forward
    double fov_y = M_PI / 3.0;
    int width = 64;
    int height = 64;
    double near = 0.05;
    double far = 10.0;

    static Camera from(const scene::CameraState& s) {
        Camera c;
        c.pose = s.pose;
        c.fov_y = s.fov_y;
        c.width = s.width;
        c.height = s.height;
        return c;
    }

    double focal() const { return 0.5 * height / std::tan(0.5 * fov_y); }
};

struct PixelDepth {
    double u = 0.0;  // continuous pixel coordinates; the principal point is (w/2, h/2)
    double v = 0.0;
    double depth = 0.0;  // camera-space z, meters
};

// Pinhole projection. nullopt when the point is behind the near plane.
std::optional<PixelDepth> project_point(const Camera& camera, const Vec3& world_point);

}  // namespace randgrasp::render
