#pragma once

#include <string>
#include <vector>

#include "randgrasp/mathkin/transform.hpp"
#include "randgrasp/scene/texture.hpp"

namespace randgrasp::scene {

using mathkin::Transform;
using mathkin::Vec3;
using mathkin::Vec6;

struct CubeState {
    Vec3 position = Vec3::Zero();  // center, world frame
    double edge = 0.05;
    Color color = Color(0.8, 0.1, 0.1);

    double half() const { return 0.5 * edge; }
};

struct BasketState {
    Vec3 position = Vec3::Zero();  // center of the opening footprint, on the table
    double half_x = 0.10;          // opening half-extents
    double half_y = 0.10;
    double depth = 0.10;           // wall height above the table
    Color color = Color(0.15, 0.25, 0.55);

    // Basket walls occupy a band of this thickness around the opening.
    static constexpr double kWallThickness = 0.015;

    bool contains(const Vec3& cube_center) const {
        return std::abs(cube_center.x() - position.x()) <= half_x &&
               std::abs(cube_center.y() - position.y()) <= half_y && cube_center.z() >= 0.0 &&
               cube_center.z() <= depth;
    }
};

enum class DistractorShape : int { kBox = 0, kSphere = 1, kCylinder = 2 };

struct Distractor {
    DistractorShape shape = DistractorShape::kBox;
    Vec3 position = Vec3::Zero();  // center of the footprint, on the table
    Vec3 size = Vec3(0.03, 0.03, 0.03);
    Color color = Color(0.5, 0.5, 0.5);
};

struct CameraState {
    Transform pose;  // camera-to-world; +x right, +y down, +z forward
    double fov_y = M_PI / 3.0;
    int width = 64;
    int height = 64;
};

struct LightState {
    Vec3 direction = Vec3(-0.35, 0.25, -0.9).normalized();  // direction light travels
    double intensity = 1.0;
};

enum class BasketSide : int { kLeft = 0, kRight = 1 };

// Fully sampled world state for one episode.
struct Scene {
    CubeState cube;
    BasketState basket;
    BasketSide basket_side = BasketSide::kLeft;
    double arm_base_height = 0.02;
    Vec6 start_joints = Vec6::Zero();
    CameraState camera;
    LightState light;
    Color arm_color = Color(0.75, 0.5, 0.15);
    std::vector<Distractor> distractors;
    TextureMap table_texture;
    TextureMap background_texture;
    bool shadows_enabled = true;
};

// Canonical binary serialization; two scenes are the same sample iff the
// bytes match.
std::string serialize_scene(const Scene& s);

}  // namespace randgrasp::scene
