#pragma once

#include <cstdint>
#include <string>

#include "randgrasp/scene/scene.hpp"

namespace randgrasp::scene {

struct Rect {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double center_x() const { return 0.5 * (x0 + x1); }
    double center_y() const { return 0.5 * (y0 + y1); }
};

struct ColorSpec {
    Color mean = Color(0.5, 0.5, 0.5);
    double stddev = 0.05;
};

struct Range {
    double lo = 0, hi = 0;
};

// Every knob of the per-episode randomisation, plus the ablation switches.
struct RandomisationConfig {
    // layout (meters, table plane z = 0, arm base at the origin)
    Rect cube_region{0.25, 0.65, -0.20, 0.20};
    Rect basket_region_left{0.25, 0.55, 0.30, 0.60};
    Rect basket_region_right{0.25, 0.55, -0.60, -0.30};
    double cube_edge = 0.05;
    double basket_half_x = 0.10, basket_half_y = 0.10, basket_depth = 0.10;

    ColorSpec cube_color{Color(0.85, 0.12, 0.10), 0.05};
    ColorSpec basket_color{Color(0.15, 0.25, 0.55), 0.05};
    ColorSpec arm_color{Color(0.75, 0.50, 0.15), 0.05};
    ColorSpec table_color{Color(0.55, 0.45, 0.35), 0.05};       // used when textures are off
    ColorSpec background_color{Color(0.70, 0.70, 0.75), 0.05};  // used when textures are off

    Vec3 camera_position = Vec3(1.30, 0.0, 0.80);  // canonical; orientation always aims here
    Vec3 camera_lookat = Vec3(0.40, 0.0, 0.05);
    double camera_jitter = 0.20;  // uniform box edge per axis around the canonical position
    double camera_fov_y = M_PI / 3.0;
    int image_width = 64;
    int image_height = 64;

    Vec3 light_direction = Vec3(-0.35, 0.25, -0.90);
    double light_cone_half_angle = M_PI / 6.0;
    Range light_intensity{0.7, 1.3};

    Range base_height{0.00, 0.04};
    double start_joint_stddev = 0.03;

    int distractor_count_min = 0;
    int distractor_count_max = 4;
    Range distractor_size{0.02, 0.06};
    Rect distractor_region{0.15, 0.75, -0.65, 0.65};

    TextureParams texture_params;
    int texture_resolution = 128;

    // ablation switches
    bool randomize_distractors = true;
    bool randomize_textures = true;
    bool randomize_camera = true;
    bool shadows_enabled = true;
    bool randomize_colors = true;
    bool randomize_light = true;
    bool randomize_base_height = true;
    bool randomize_start_joints = true;
};

// Draws a full Scene; every field comes from its own derived substream, so a
// disabled switch never shifts any other field's draw.
Scene sample_scene(const RandomisationConfig& cfg, std::uint64_t rng_seed);

// Canonical camera-to-world pose for a camera at `position` aimed at `lookat`.
Transform camera_look_at(const Vec3& position, const Vec3& lookat);

// Table 1 rows: "no_distractors", "no_textures", "no_moving_cam",
// "no_shadows", "baseline". Throws UnknownSwitch otherwise.
RandomisationConfig apply_ablation(const RandomisationConfig& cfg, const std::string& switch_name);

// Text config file, magic header "RANDGRASP-CFG v1".
RandomisationConfig load_randomisation_config(const std::string& path);
void save_randomisation_config(const RandomisationConfig& cfg, const std::string& path);

// Canonical text form (same schema as the file) and its hash.
std::string serialize_config(const RandomisationConfig& cfg);
std::uint64_t config_hash(const RandomisationConfig& cfg);

}  // namespace randgrasp::scene
