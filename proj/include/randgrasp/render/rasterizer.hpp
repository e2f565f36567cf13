#pragma once

#include "randgrasp/mathkin/arm.hpp"
#include "randgrasp/render/camera.hpp"
#include "randgrasp/render/image.hpp"

namespace randgrasp::render {

// Z-buffered rasterization of the whole scene with the arm posed by forward
// kinematics. Lambertian flat shading on objects; table and background shade
// by light intensity only, so with shadows disabled their pixels are
// independent of the light direction.
Image render_scene(const scene::Scene& s, const mathkin::ArmModel& arm, const mathkin::Vec6& arm_angles,
             const Camera& camera);

// Convenience overload using the scene's own camera.
Image render_scene(const scene::Scene& s, const mathkin::ArmModel& arm, const mathkin::Vec6& arm_angles);

// 5x5 pixel cross at the projected location; no-op when the point is behind
// the camera or entirely outside the frame. Overwrites, so it is idempotent.
void overlay_marker(Image& img, const Camera& camera, const Vec3& world_point, const Color& color);

}  // namespace randgrasp::render
