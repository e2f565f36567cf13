#include "randgrasp/scene/randomisation.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "randgrasp/core/binio.hpp"
#include "randgrasp/core/errors.hpp"
#include "randgrasp/core/hash.hpp"
#include "randgrasp/core/rng.hpp"
#include "randgrasp/mathkin/arm.hpp"

namespace randgrasp::scene {

namespace {

// Substream tags: every sampled quantity draws from its own derived stream,
// so toggling one randomisation never shifts another one's values.
enum Tag : std::uint64_t {
    kTagCubePos = 1,
    kTagCubeColor,
    kTagBasket,
    kTagArmColor,
    kTagTableColor,
    kTagBackgroundColor,
    kTagBaseHeight,
    kTagStartJoints,
    kTagCamera,
    kTagLight,
    kTagDistractors,
    kTagTableTexture,
    kTagBackgroundTexture,
};

Color sample_color(const ColorSpec& spec, bool randomize, core::Rng& rng) {
    if (!randomize) return spec.mean;
    Color c;
    for (int i = 0; i < 3; ++i) c[i] = std::clamp(rng.normal(spec.mean[i], spec.stddev), 0.0, 1.0);
    return c;
}

Vec3 sample_in_cone(const Vec3& axis, double half_angle, core::Rng& rng) {
    const Vec3 d = axis.normalized();
    Vec3 helper = std::abs(d.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
    const Vec3 e1 = d.cross(helper).normalized();
    const Vec3 e2 = d.cross(e1);
    const double cos_phi = 1.0 - rng.uniform01() * (1.0 - std::cos(half_angle));
    const double sin_phi = std::sqrt(std::max(0.0, 1.0 - cos_phi * cos_phi));
    const double az = rng.uniform(0.0, 2.0 * M_PI);
    return cos_phi * d + sin_phi * (std::cos(az) * e1 + std::sin(az) * e2);
}

double footprint_radius(const Distractor& d) {
    if (d.shape == DistractorShape::kBox) return std::max(d.size.x(), d.size.y());
    return d.size.x();
}

}  // namespace

Transform camera_look_at(const Vec3& position, const Vec3& lookat) {
    const Vec3 forward = (lookat - position).normalized();
    const Vec3 right = forward.cross(Vec3::UnitZ()).normalized();
    const Vec3 down = forward.cross(right);
    Transform t;
    t.rotation.col(0) = right;
    t.rotation.col(1) = down;
    t.rotation.col(2) = forward;
    t.translation = position;
    return t;
}

Scene sample_scene(const RandomisationConfig& cfg, std::uint64_t rng_seed) {
    Scene s;

    {
        core::Rng rng(core::derive_seed(rng_seed, kTagCubePos));
        s.cube.position = Vec3(rng.uniform(cfg.cube_region.x0, cfg.cube_region.x1),
                               rng.uniform(cfg.cube_region.y0, cfg.cube_region.y1), 0.5 * cfg.cube_edge);
        s.cube.edge = cfg.cube_edge;
    }
    {
        core::Rng rng(core::derive_seed(rng_seed, kTagCubeColor));
        s.cube.color = sample_color(cfg.cube_color, cfg.randomize_colors, rng);
    }
    {
        core::Rng rng(core::derive_seed(rng_seed, kTagBasket));
        s.basket_side = rng.uniform01() < 0.5 ? BasketSide::kLeft : BasketSide::kRight;
        const Rect& region =
            s.basket_side == BasketSide::kLeft ? cfg.basket_region_left : cfg.basket_region_right;
        // keep the full opening inside the region
        s.basket.position = Vec3(rng.uniform(region.x0 + cfg.basket_half_x, region.x1 - cfg.basket_half_x),
                                 rng.uniform(region.y0 + cfg.basket_half_y, region.y1 - cfg.basket_half_y), 0.0);
        s.basket.half_x = cfg.basket_half_x;
        s.basket.half_y = cfg.basket_half_y;
        s.basket.depth = cfg.basket_depth;
        core::Rng color_rng(core::derive_seed(rng_seed, kTagBasket + 100));
        s.basket.color = sample_color(cfg.basket_color, cfg.randomize_colors, color_rng);
    }
    {
        core::Rng rng(core::derive_seed(rng_seed, kTagArmColor));
        s.arm_color = sample_color(cfg.arm_color, cfg.randomize_colors, rng);
    }
    {
        core::Rng rng(core::derive_seed(rng_seed, kTagBaseHeight));
        s.arm_base_height = cfg.randomize_base_height ? rng.uniform(cfg.base_height.lo, cfg.base_height.hi)
                                                      : 0.5 * (cfg.base_height.lo + cfg.base_height.hi);
    }
    {
        core::Rng rng(core::derive_seed(rng_seed, kTagStartJoints));
        const auto model = mathkin::ArmModel::reference();
        const Vec6 home = mathkin::ArmModel::reference_home();
        for (int i = 0; i < mathkin::kNumJoints; ++i) {
            const double q =
                cfg.randomize_start_joints ? rng.normal(home[i], cfg.start_joint_stddev) : home[i];
            s.start_joints[i] = std::clamp(q, model.limits[i].lo, model.limits[i].hi);
        }
    }
    {
        core::Rng rng(core::derive_seed(rng_seed, kTagCamera));
        Vec3 pos = cfg.camera_position;
        if (cfg.randomize_camera) {
            const double h = 0.5 * cfg.camera_jitter;
            pos += Vec3(rng.uniform(-h, h), rng.uniform(-h, h), rng.uniform(-h, h));
        }
        // orientation stays the canonical aim regardless of position jitter
        s.camera.pose = camera_look_at(cfg.camera_position, cfg.camera_lookat);
        s.camera.pose.translation = pos;
        s.camera.fov_y = cfg.camera_fov_y;
        s.camera.width = cfg.image_width;
        s.camera.height = cfg.image_height;
    }
    {
        core::Rng rng(core::derive_seed(rng_seed, kTagLight));
        if (cfg.randomize_light) {
            s.light.direction = sample_in_cone(cfg.light_direction, cfg.light_cone_half_angle, rng);
            s.light.intensity = rng.uniform(cfg.light_intensity.lo, cfg.light_intensity.hi);
        } else {
            s.light.direction = cfg.light_direction.normalized();
            s.light.intensity = 0.5 * (cfg.light_intensity.lo + cfg.light_intensity.hi);
        }
    }
    if (cfg.randomize_distractors) {
        core::Rng count_rng(core::derive_seed(rng_seed, kTagDistractors));
        const int count = count_rng.uniform_int(cfg.distractor_count_min, cfg.distractor_count_max);
        for (int i = 0; i < count; ++i) {
            core::Rng rng(core::derive_seed(rng_seed, kTagDistractors, static_cast<std::uint64_t>(i) + 1));
            Distractor d;
            d.shape = static_cast<DistractorShape>(rng.uniform_index(3));
            d.size = Vec3(rng.uniform(cfg.distractor_size.lo, cfg.distractor_size.hi),
                          rng.uniform(cfg.distractor_size.lo, cfg.distractor_size.hi),
                          rng.uniform(cfg.distractor_size.lo, cfg.distractor_size.hi));
            d.color = Color(rng.uniform01(), rng.uniform01(), rng.uniform01());

            // rejection-sample a position clear of the cube and basket footprints
            bool placed = false;
            for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
                const double x = rng.uniform(cfg.distractor_region.x0, cfg.distractor_region.x1);
                const double y = rng.uniform(cfg.distractor_region.y0, cfg.distractor_region.y1);
                const double r = footprint_radius(d);
                const double margin = 0.01;
                const bool hits_cube = std::abs(x - s.cube.position.x()) < r + s.cube.half() + margin &&
                                       std::abs(y - s.cube.position.y()) < r + s.cube.half() + margin;
                const double bx = s.basket.half_x + BasketState::kWallThickness;
                const double by = s.basket.half_y + BasketState::kWallThickness;
                const bool hits_basket = std::abs(x - s.basket.position.x()) < r + bx + margin &&
                                         std::abs(y - s.basket.position.y()) < r + by + margin;
                if (hits_cube || hits_basket) continue;
                const double z = d.shape == DistractorShape::kSphere ? d.size.x() : d.size.z();
                d.position = Vec3(x, y, z);
                placed = true;
            }
            if (placed) s.distractors.push_back(d);  // else: emitted with fewer distractors
        }
    }
    if (cfg.randomize_textures) {
        s.table_texture = synthesize_texture(cfg.texture_params, core::derive_seed(rng_seed, kTagTableTexture),
                                             cfg.texture_resolution);
        s.background_texture = synthesize_texture(
            cfg.texture_params, core::derive_seed(rng_seed, kTagBackgroundTexture), cfg.texture_resolution);
    } else {
        core::Rng table_rng(core::derive_seed(rng_seed, kTagTableColor));
        core::Rng bg_rng(core::derive_seed(rng_seed, kTagBackgroundColor));
        s.table_texture =
            TextureMap::solid(16, sample_color(cfg.table_color, cfg.randomize_colors, table_rng));
        s.background_texture =
            TextureMap::solid(16, sample_color(cfg.background_color, cfg.randomize_colors, bg_rng));
    }
    s.shadows_enabled = cfg.shadows_enabled;
    return s;
}

RandomisationConfig apply_ablation(const RandomisationConfig& cfg, const std::string& switch_name) {
    RandomisationConfig out = cfg;
    if (switch_name == "full") {
        return out;
    } else if (switch_name == "no_distractors") {
        out.randomize_distractors = false;
    } else if (switch_name == "no_textures") {
        out.randomize_textures = false;
    } else if (switch_name == "no_moving_cam") {
        out.randomize_camera = false;
    } else if (switch_name == "no_shadows") {
        out.shadows_enabled = false;
    } else if (switch_name == "baseline") {
        out.randomize_distractors = false;
        out.randomize_textures = false;
        out.randomize_camera = false;
        out.randomize_colors = false;
        out.randomize_light = false;
        out.randomize_base_height = false;
        out.randomize_start_joints = false;
    } else {
        throw core::UnknownSwitch("unknown ablation switch: " + switch_name);
    }
    return out;
}

std::string serialize_scene(const Scene& s) {
    std::ostringstream os(std::ios::binary);
    core::BinWriter w(os);
    auto put_vec3 = [&](const Vec3& v) { w.f64s(v.data(), 3); };
    auto put_color = [&](const Color& c) { w.f64s(c.data(), 3); };
    auto put_texture = [&](const TextureMap& t) {
        w.u32(static_cast<std::uint32_t>(t.resolution));
        w.u64(t.seed);
        w.bytes(t.pixels.data(), t.pixels.size());
    };

    put_vec3(s.cube.position);
    w.f64(s.cube.edge);
    put_color(s.cube.color);
    put_vec3(s.basket.position);
    w.f64(s.basket.half_x);
    w.f64(s.basket.half_y);
    w.f64(s.basket.depth);
    put_color(s.basket.color);
    w.u8(static_cast<std::uint8_t>(s.basket_side));
    w.f64(s.arm_base_height);
    w.f64s(s.start_joints.data(), 6);
    for (int c = 0; c < 3; ++c) put_vec3(s.camera.pose.rotation.col(c));
    put_vec3(s.camera.pose.translation);
    w.f64(s.camera.fov_y);
    w.u32(static_cast<std::uint32_t>(s.camera.width));
    w.u32(static_cast<std::uint32_t>(s.camera.height));
    put_vec3(s.light.direction);
    w.f64(s.light.intensity);
    put_color(s.arm_color);
    w.u32(static_cast<std::uint32_t>(s.distractors.size()));
    for (const auto& d : s.distractors) {
        w.u8(static_cast<std::uint8_t>(d.shape));
        put_vec3(d.position);
        put_vec3(d.size);
        put_color(d.color);
    }
    put_texture(s.table_texture);
    put_texture(s.background_texture);
    w.u8(s.shadows_enabled ? 1 : 0);
    return os.str();
}

// --- config text format ---------------------------------------------------

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(const Vec3& v) { return fmt(v.x()) + " " + fmt(v.y()) + " " + fmt(v.z()); }
std::string fmt(const Rect& r) { return fmt(r.x0) + " " + fmt(r.x1) + " " + fmt(r.y0) + " " + fmt(r.y1); }
std::string fmt(const Range& r) { return fmt(r.lo) + " " + fmt(r.hi); }
std::string fmt_color(const ColorSpec& c) { return fmt(Vec3(c.mean)) + " " + fmt(c.stddev); }

}  // namespace

std::string serialize_config(const RandomisationConfig& c) {
    std::ostringstream os;
    os << "RANDGRASP-CFG v1\n";
    os << "cube.region = " << fmt(c.cube_region) << "\n";
    os << "cube.edge = " << fmt(c.cube_edge) << "\n";
    os << "cube.color = " << fmt_color(c.cube_color) << "\n";
    os << "basket.region_left = " << fmt(c.basket_region_left) << "\n";
    os << "basket.region_right = " << fmt(c.basket_region_right) << "\n";
    os << "basket.half_extents = " << fmt(c.basket_half_x) << " " << fmt(c.basket_half_y) << "\n";
    os << "basket.depth = " << fmt(c.basket_depth) << "\n";
    os << "basket.color = " << fmt_color(c.basket_color) << "\n";
    os << "arm.color = " << fmt_color(c.arm_color) << "\n";
    os << "table.color = " << fmt_color(c.table_color) << "\n";
    os << "background.color = " << fmt_color(c.background_color) << "\n";
    os << "camera.position = " << fmt(c.camera_position) << "\n";
    os << "camera.lookat = " << fmt(c.camera_lookat) << "\n";
    os << "camera.jitter = " << fmt(c.camera_jitter) << "\n";
    os << "camera.fov_y = " << fmt(c.camera_fov_y) << "\n";
    os << "camera.resolution = " << c.image_width << " " << c.image_height << "\n";
    os << "light.direction = " << fmt(c.light_direction) << "\n";
    os << "light.cone_half_angle = " << fmt(c.light_cone_half_angle) << "\n";
    os << "light.intensity_range = " << fmt(c.light_intensity) << "\n";
    os << "arm.base_height_range = " << fmt(c.base_height) << "\n";
    os << "arm.start_joint_stddev = " << fmt(c.start_joint_stddev) << "\n";
    os << "distractors.count_range = " << c.distractor_count_min << " " << c.distractor_count_max << "\n";
    os << "distractors.size_range = " << fmt(c.distractor_size) << "\n";
    os << "distractors.region = " << fmt(c.distractor_region) << "\n";
    os << "texture.octaves = " << c.texture_params.octaves << "\n";
    os << "texture.base_freq = " << fmt(c.texture_params.base_freq) << "\n";
    os << "texture.resolution = " << c.texture_resolution << "\n";
    os << "switch.distractors = " << (c.randomize_distractors ? "on" : "off") << "\n";
    os << "switch.textures = " << (c.randomize_textures ? "on" : "off") << "\n";
    os << "switch.camera_jitter = " << (c.randomize_camera ? "on" : "off") << "\n";
    os << "switch.shadows = " << (c.shadows_enabled ? "on" : "off") << "\n";
    os << "switch.colors = " << (c.randomize_colors ? "on" : "off") << "\n";
    os << "switch.light = " << (c.randomize_light ? "on" : "off") << "\n";
    os << "switch.base_height = " << (c.randomize_base_height ? "on" : "off") << "\n";
    os << "switch.start_joints = " << (c.randomize_start_joints ? "on" : "off") << "\n";
    return os.str();
}

std::uint64_t config_hash(const RandomisationConfig& cfg) { return core::fnv1a64(serialize_config(cfg)); }

void save_randomisation_config(const RandomisationConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw core::IoFailure("cannot write config file: " + path);
    out << serialize_config(cfg);
    if (!out) throw core::IoFailure("failed writing config file: " + path);
}

namespace {

std::vector<double> numbers(const std::string& text, std::size_t expected, const std::string& key) {
    std::istringstream ss(text);
    std::vector<double> vals;
    double v;
    while (ss >> v) vals.push_back(v);
    if (vals.size() != expected)
        throw core::CorruptData("config: '" + key + "' expects " + std::to_string(expected) + " numbers");
    return vals;
}

bool parse_switch(const std::string& text, const std::string& key) {
    std::istringstream ss(text);
    std::string word;
    ss >> word;
    if (word == "on" || word == "true" || word == "1") return true;
    if (word == "off" || word == "false" || word == "0") return false;
    throw core::CorruptData("config: '" + key + "' expects on/off");
}

}  // namespace

RandomisationConfig load_randomisation_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw core::IoFailure("cannot open config file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "RANDGRASP-CFG v1")
        throw core::CorruptData("config: missing 'RANDGRASP-CFG v1' header in " + path);

    RandomisationConfig c;
    std::map<std::string, std::function<void(const std::string&, const std::string&)>> keys;
    auto vec3_key = [&](const std::string& k, Vec3* out) {
        keys[k] = [out](const std::string& v, const std::string& key) {
            auto n = numbers(v, 3, key);
            *out = Vec3(n[0], n[1], n[2]);
        };
    };
    auto rect_key = [&](const std::string& k, Rect* out) {
        keys[k] = [out](const std::string& v, const std::string& key) {
            auto n = numbers(v, 4, key);
            *out = Rect{n[0], n[1], n[2], n[3]};
        };
    };
    auto range_key = [&](const std::string& k, Range* out) {
        keys[k] = [out](const std::string& v, const std::string& key) {
            auto n = numbers(v, 2, key);
            *out = Range{n[0], n[1]};
        };
    };
    auto double_key = [&](const std::string& k, double* out) {
        keys[k] = [out](const std::string& v, const std::string& key) { *out = numbers(v, 1, key)[0]; };
    };
    auto color_key = [&](const std::string& k, ColorSpec* out) {
        keys[k] = [out](const std::string& v, const std::string& key) {
            auto n = numbers(v, 4, key);
            out->mean = Color(n[0], n[1], n[2]);
            out->stddev = n[3];
        };
    };
    auto int_pair_key = [&](const std::string& k, int* a, int* b) {
        keys[k] = [a, b](const std::string& v, const std::string& key) {
            auto n = numbers(v, 2, key);
            *a = static_cast<int>(n[0]);
            *b = static_cast<int>(n[1]);
        };
    };
    auto int_key = [&](const std::string& k, int* out) {
        keys[k] = [out](const std::string& v, const std::string& key) {
            *out = static_cast<int>(numbers(v, 1, key)[0]);
        };
    };
    auto switch_key = [&](const std::string& k, bool* out) {
        keys[k] = [out](const std::string& v, const std::string& key) { *out = parse_switch(v, key); };
    };

    rect_key("cube.region", &c.cube_region);
    double_key("cube.edge", &c.cube_edge);
    color_key("cube.color", &c.cube_color);
    rect_key("basket.region_left", &c.basket_region_left);
    rect_key("basket.region_right", &c.basket_region_right);
    keys["basket.half_extents"] = [&c](const std::string& v, const std::string& key) {
        auto n = numbers(v, 2, key);
        c.basket_half_x = n[0];
        c.basket_half_y = n[1];
    };
    double_key("basket.depth", &c.basket_depth);
    color_key("basket.color", &c.basket_color);
    color_key("arm.color", &c.arm_color);
    color_key("table.color", &c.table_color);
    color_key("background.color", &c.background_color);
    vec3_key("camera.position", &c.camera_position);
    vec3_key("camera.lookat", &c.camera_lookat);
    double_key("camera.jitter", &c.camera_jitter);
    double_key("camera.fov_y", &c.camera_fov_y);
    int_pair_key("camera.resolution", &c.image_width, &c.image_height);
    vec3_key("light.direction", &c.light_direction);
    double_key("light.cone_half_angle", &c.light_cone_half_angle);
    range_key("light.intensity_range", &c.light_intensity);
    range_key("arm.base_height_range", &c.base_height);
    double_key("arm.start_joint_stddev", &c.start_joint_stddev);
    int_pair_key("distractors.count_range", &c.distractor_count_min, &c.distractor_count_max);
    range_key("distractors.size_range", &c.distractor_size);
    rect_key("distractors.region", &c.distractor_region);
    int_key("texture.octaves", &c.texture_params.octaves);
    double_key("texture.base_freq", &c.texture_params.base_freq);
    int_key("texture.resolution", &c.texture_resolution);
    switch_key("switch.distractors", &c.randomize_distractors);
    switch_key("switch.textures", &c.randomize_textures);
    switch_key("switch.camera_jitter", &c.randomize_camera);
    switch_key("switch.shadows", &c.shadows_enabled);
    switch_key("switch.colors", &c.randomize_colors);
    switch_key("switch.light", &c.randomize_light);
    switch_key("switch.base_height", &c.randomize_base_height);
    switch_key("switch.start_joints", &c.randomize_start_joints);

    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw core::CorruptData("config: expected 'key = value': " + line);
        std::string key = line.substr(first, eq - first);
        key.erase(key.find_last_not_of(" \t") + 1);
        const auto it = keys.find(key);
        if (it == keys.end()) throw core::CorruptData("config: unknown key '" + key + "'");
        it->second(line.substr(eq + 1), key);
    }
    return c;
}

}  // namespace randgrasp::scene
