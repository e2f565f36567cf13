#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "golden_values.hpp"
#include "randgrasp/mathkin/kinematics.hpp"
#include "randgrasp/render/rasterizer.hpp"
#include "randgrasp/scene/randomisation.hpp"

using namespace randgrasp;
using namespace randgrasp::render;
using mathkin::ArmModel;
using mathkin::Vec3;
using scene::RandomisationConfig;
using scene::Scene;
using scene::TextureMap;

namespace {

Scene basic_scene() {
    RandomisationConfig cfg;
    cfg.randomize_textures = false;
    cfg.randomize_distractors = false;
    return sample_scene(cfg, 3);
}

int count_diff_pixels(const Image& a, const Image& b) {
    int n = 0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x)
            if (a.get(x, y) != b.get(x, y)) ++n;
    return n;
}

}  // namespace

TEST_CASE("projection: optical axis maps to the principal point") {
    Camera cam;
    cam.pose = scene::camera_look_at(Vec3(0, 0, 1), Vec3(2, 0, 1));
    const auto p = project_point(cam, Vec3(1.7, 0, 1));
    REQUIRE(p.has_value());
    CHECK(p->u == doctest::Approx(cam.width / 2.0).epsilon(1e-12));
    CHECK(p->v == doctest::Approx(cam.height / 2.0).epsilon(1e-12));
    CHECK(p->depth == doctest::Approx(1.7));
}

TEST_CASE("projection: top frustum edge lands on row zero") {
    Camera cam;
    cam.pose = scene::camera_look_at(Vec3(0, 0, 1), Vec3(2, 0, 1));
    // camera +y is world -z here; the top edge is tilted up by fov/2
    const double z_dist = 2.0;
    const Vec3 world = Vec3(z_dist, 0, 1 + z_dist * std::tan(cam.fov_y / 2));
    const auto p = project_point(cam, world);
    REQUIRE(p.has_value());
    CHECK(std::abs(p->v) < 0.5);
}

TEST_CASE("projection: behind-camera points are rejected") {
    Camera cam;
    cam.pose = scene::camera_look_at(Vec3(0, 0, 1), Vec3(2, 0, 1));
    CHECK_FALSE(project_point(cam, Vec3(-1.0, 0, 1)).has_value());
}

TEST_CASE("render with nothing in view shows the shaded background everywhere") {
    Scene s = basic_scene();
    const scene::Color bg(0.3, 0.5, 0.7);
    s.background_texture = TextureMap::solid(16, bg);
    s.light.intensity = 0.8;

    // aim away from all geometry
    s.camera.pose = scene::camera_look_at(Vec3(2.5, 0, 0.5), Vec3(3.5, 0, 2.5));

    const Image img = render_scene(s, ArmModel::reference(), ArmModel::reference_home());
    const double shade = 0.35 + 0.65 * s.light.intensity;
    std::uint8_t expected[3];
    for (int ch = 0; ch < 3; ++ch) {
        const double stored = std::lround(bg[ch] * 255.0) / 255.0;  // textures quantize to 8 bits
        expected[ch] = static_cast<std::uint8_t>(std::lround(std::clamp(stored * shade, 0.0, 1.0) * 255.0));
    }
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
        REQUIRE(img.pixels[i] == expected[0]);
        REQUIRE(img.pixels[i + 1] == expected[1]);
        REQUIRE(img.pixels[i + 2] == expected[2]);
    }
}

TEST_CASE("cube pixel centroid matches the analytic pinhole projection") {
    Scene s = basic_scene();
    s.shadows_enabled = false;
    s.cube.position = Vec3(0.5, 0.1, s.cube.half());
    s.camera.width = s.camera.height = 128;  // finer grid tightens the centroid

    Scene without = s;
    without.cube.edge = 0.0;  // degenerate cube: no pixels

    const ArmModel arm = ArmModel::reference();
    const auto q = ArmModel::reference_home();
    const Image with_cube = render_scene(s, arm, q);
    const Image bare = render_scene(without, arm, q);

    double sum_x = 0, sum_y = 0;
    int n = 0;
    for (int y = 0; y < with_cube.height; ++y)
        for (int x = 0; x < with_cube.width; ++x)
            if (with_cube.get(x, y) != bare.get(x, y)) {
                sum_x += x + 0.5;
                sum_y += y + 0.5;
                ++n;
            }
    REQUIRE(n > 4);

    // independent pinhole projection of the cube center
    const auto& cam = s.camera;
    const Vec3 p_cam = cam.pose.rotation.transpose() * (s.cube.position - cam.pose.translation);
    const double f = 0.5 * cam.height / std::tan(0.5 * cam.fov_y);
    const double u = 0.5 * cam.width + f * p_cam.x() / p_cam.z();
    const double v = 0.5 * cam.height + f * p_cam.y() / p_cam.z();
    CHECK(std::abs(sum_x / n - u) < 1.0);
    CHECK(std::abs(sum_y / n - v) < 1.0);
}

TEST_CASE("rendering is deterministic with a golden hash") {
    RandomisationConfig cfg;
    const Scene s = sample_scene(cfg, 7);
    const ArmModel arm = ArmModel::reference();
    const Image a = render_scene(s, arm, ArmModel::reference_home());
    const Image b = render_scene(s, arm, ArmModel::reference_home());
    CHECK(image_hash(a) == image_hash(b));
    CHECK(a == b);
    CHECK(image_hash(a) == golden::kRenderSeed7Hash);
}

TEST_CASE("occlusion: a box fully behind another contributes no pixels") {
    Scene s = basic_scene();
    s.shadows_enabled = false;
    // camera looks from +x toward the arm; hide a small box behind a big one
    scene::Distractor big;
    big.shape = scene::DistractorShape::kBox;
    big.size = Vec3(0.05, 0.12, 0.12);
    big.position = Vec3(0.62, -0.45, 0.12);
    big.color = scene::Color(0.9, 0.9, 0.2);
    scene::Distractor small = big;
    small.size = Vec3(0.02, 0.03, 0.03);
    small.position = Vec3(0.50, -0.47, 0.10);  // between the big box and the arm, fully occluded
    small.color = scene::Color(0.1, 0.9, 0.9);

    Scene with_both = s;
    with_both.distractors = {big, small};
    Scene only_big = s;
    only_big.distractors = {big};

    const ArmModel arm = ArmModel::reference();
    const auto q = ArmModel::reference_home();
    CHECK(count_diff_pixels(render_scene(with_both, arm, q), render_scene(only_big, arm, q)) == 0);
}

TEST_CASE("without shadows, table pixels ignore the light direction") {
    RandomisationConfig cfg;
    cfg.randomize_distractors = false;
    cfg.texture_resolution = 32;
    Scene s = sample_scene(cfg, 11);
    const ArmModel arm = ArmModel::reference();
    const auto q = ArmModel::reference_home();

    // mask of object pixels: recolor every object and diff
    Scene recolored = s;
    recolored.arm_color = scene::Color(0.05, 0.05, 0.05);
    recolored.cube.color = scene::Color(0.05, 0.9, 0.05);
    recolored.basket.color = scene::Color(0.9, 0.05, 0.9);

    Scene s2 = s;
    s2.light.direction = Vec3(0.4, -0.3, -0.85).normalized();

    SUBCASE("shadows disabled: light direction only affects object pixels") {
        s.shadows_enabled = recolored.shadows_enabled = s2.shadows_enabled = false;
        const Image base = render_scene(s, arm, q);
        const Image mask_img = render_scene(recolored, arm, q);
        const Image moved = render_scene(s2, arm, q);
        for (int y = 0; y < base.height; ++y)
            for (int x = 0; x < base.width; ++x)
                if (base.get(x, y) != moved.get(x, y)) REQUIRE(base.get(x, y) != mask_img.get(x, y));
    }

    SUBCASE("shadows enabled: some non-object pixels do change") {
        const Image base = render_scene(s, arm, q);
        const Image mask_img = render_scene(recolored, arm, q);
        Image moved = render_scene(s2, arm, q);
        int shadow_moves = 0;
        for (int y = 0; y < base.height; ++y)
            for (int x = 0; x < base.width; ++x)
                if (base.get(x, y) != moved.get(x, y) && base.get(x, y) == mask_img.get(x, y))
                    ++shadow_moves;
        CHECK(shadow_moves > 0);
    }
}

TEST_CASE("marker overlay draws a cross and is idempotent") {
    Scene s = basic_scene();
    const ArmModel arm = ArmModel::reference();
    const Image base = render_scene(s, arm, ArmModel::reference_home());
    const Camera cam = Camera::from(s.camera);

    Image img = base;
    overlay_marker(img, cam, s.cube.position, scene::Color(0, 1, 0));
    CHECK(count_diff_pixels(img, base) > 0);
    Image img2 = img;
    overlay_marker(img2, cam, s.cube.position, scene::Color(0, 1, 0));
    CHECK(img2 == img);

    // behind the camera: no-op
    Image img3 = base;
    overlay_marker(img3, cam, cam.pose.translation + cam.pose.rotation.col(2) * -1.0, scene::Color(1, 0, 0));
    CHECK(img3 == base);
}

TEST_CASE("ppm round-trips") {
    Scene s = basic_scene();
    const Image img = render_scene(s, ArmModel::reference(), ArmModel::reference_home());
    const auto tmp = std::filesystem::temp_directory_path() / "randgrasp_render.ppm";
    write_ppm(img, tmp.string());
    const Image back = read_ppm(tmp.string());
    std::filesystem::remove(tmp);
    CHECK(back == img);
}
