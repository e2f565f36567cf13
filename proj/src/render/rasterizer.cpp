#include "randgrasp/render/rasterizer.hpp"

#include <cmath>
#include <limits>

#include "randgrasp/mathkin/kinematics.hpp"

namespace randgrasp::render {

using mathkin::Mat3;
using scene::Scene;
using scene::TextureMap;

std::optional<PixelDepth> project_point(const Camera& camera, const Vec3& world_point) {
    const Vec3 p = inverse(camera.pose).apply(world_point);
    if (p.z() < camera.near) return std::nullopt;
    const double f = camera.focal();
    return PixelDepth{0.5 * camera.width + f * p.x() / p.z(), 0.5 * camera.height + f * p.y() / p.z(),
                      p.z()};
}

namespace {

constexpr double kAmbient = 0.35;
constexpr double kDiffuse = 0.65;
constexpr double kShadowFactor = 0.45;

struct Triangle {
    Vec3 v[3];
    Vec3 normal;                       // face normal, world frame
    Color color = Color(0.5, 0.5, 0.5);
    const TextureMap* texture = nullptr;  // when set, uv interpolated per pixel
    double uv[3][2] = {};
    bool lambert = true;   // false: intensity-only shading (table)
    bool casts_shadow = true;
    bool receives_shadow = false;
};

struct Framebuffer {
    Image image;
    std::vector<double> depth;
    std::vector<std::uint8_t> receiver;  // table pixels, shadow receivers
    std::vector<std::uint8_t> shadowed;

    Framebuffer(int w, int h)
        : image(w, h),
          depth(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity()),
          receiver(static_cast<std::size_t>(w) * h, 0),
          shadowed(static_cast<std::size_t>(w) * h, 0) {}
};

double object_shade(const Vec3& normal, const scene::LightState& light) {
    const double ndl = std::max(0.0, normal.dot(-light.direction));
    return kAmbient + kDiffuse * ndl * light.intensity;
}

double flat_shade(const scene::LightState& light) { return kAmbient + kDiffuse * light.intensity; }

void add_triangle(std::vector<Triangle>& out, const Vec3& a, const Vec3& b, const Vec3& c,
                  const Color& color, bool casts_shadow = true) {
    Triangle t;
    t.v[0] = a;
    t.v[1] = b;
    t.v[2] = c;
    const Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    t.normal = len > 1e-12 ? Vec3(n / len) : Vec3::UnitZ();
    t.color = color;
    t.casts_shadow = casts_shadow;
    out.push_back(t);
}

// Axis-aligned-in-local-frame box: center, rotation, half extents.
void add_box(std::vector<Triangle>& out, const Vec3& center, const Mat3& rot, const Vec3& half,
             const Color& color, bool casts_shadow = true) {
    Vec3 corners[8];
    for (int i = 0; i < 8; ++i) {
        const Vec3 local(((i & 1) ? half.x() : -half.x()), ((i & 2) ? half.y() : -half.y()),
                         ((i & 4) ? half.z() : -half.z()));
        corners[i] = center + rot * local;
    }
    // quads wound outward
    static const int faces[6][4] = {{1, 3, 7, 5}, {0, 4, 6, 2}, {2, 6, 7, 3},
                                    {0, 1, 5, 4}, {4, 5, 7, 6}, {0, 2, 3, 1}};
    for (const auto& f : faces) {
        add_triangle(out, corners[f[0]], corners[f[1]], corners[f[2]], color, casts_shadow);
        add_triangle(out, corners[f[0]], corners[f[2]], corners[f[3]], color, casts_shadow);
    }
}

Mat3 frame_along(const Vec3& dir) {
    const Vec3 z = dir.normalized();
    const Vec3 helper = std::abs(z.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
    const Vec3 x = z.cross(helper).normalized();
    const Vec3 y = z.cross(x);
    Mat3 r;
    r.col(0) = x;
    r.col(1) = y;
    r.col(2) = z;
    return r;
}

void add_sphere(std::vector<Triangle>& out, const Vec3& center, double radius, const Color& color) {
    const int stacks = 6, slices = 10;
    auto vertex = [&](int st, int sl) {
        const double phi = M_PI * st / stacks;
        const double theta = 2.0 * M_PI * sl / slices;
        return Vec3(center.x() + radius * std::sin(phi) * std::cos(theta),
                    center.y() + radius * std::sin(phi) * std::sin(theta),
                    center.z() + radius * std::cos(phi));
    };
    for (int st = 0; st < stacks; ++st) {
        for (int sl = 0; sl < slices; ++sl) {
            const Vec3 a = vertex(st, sl), b = vertex(st + 1, sl), c = vertex(st + 1, sl + 1),
                       d = vertex(st, sl + 1);
            if (st > 0) add_triangle(out, a, b, c, color);
            if (st < stacks - 1) add_triangle(out, a, c, d, color);
        }
    }
}

void add_cylinder(std::vector<Triangle>& out, const Vec3& base_center, double radius, double height,
                  const Color& color) {
    const int slices = 10;
    const Vec3 top = base_center + Vec3(0, 0, height);
    for (int sl = 0; sl < slices; ++sl) {
        const double t0 = 2.0 * M_PI * sl / slices;
        const double t1 = 2.0 * M_PI * (sl + 1) / slices;
        const Vec3 r0(radius * std::cos(t0), radius * std::sin(t0), 0);
        const Vec3 r1(radius * std::cos(t1), radius * std::sin(t1), 0);
        add_triangle(out, base_center + r0, base_center + r1, top + r1, color);
        add_triangle(out, base_center + r0, top + r1, top + r0, color);
        add_triangle(out, top, top + r0, top + r1, color);
        add_triangle(out, base_center, base_center + r1, base_center + r0, color);
    }
}

// Table plane quad grid; tessellation keeps the affine texture mapping close
// to perspective-correct.
void add_table(std::vector<Triangle>& out, const TextureMap& texture) {
    const double x0 = -0.30, x1 = 1.05, y0 = -0.90, y1 = 0.90;
    const int n = 8;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double xa = x0 + (x1 - x0) * i / n, xb = x0 + (x1 - x0) * (i + 1) / n;
            const double ya = y0 + (y1 - y0) * j / n, yb = y0 + (y1 - y0) * (j + 1) / n;
            const double ua = static_cast<double>(i) / n, ub = static_cast<double>(i + 1) / n;
            const double va = static_cast<double>(j) / n, vb = static_cast<double>(j + 1) / n;
            Triangle t1;
            t1.v[0] = Vec3(xa, ya, 0);
            t1.v[1] = Vec3(xb, ya, 0);
            t1.v[2] = Vec3(xb, yb, 0);
            t1.uv[0][0] = ua; t1.uv[0][1] = va;
            t1.uv[1][0] = ub; t1.uv[1][1] = va;
            t1.uv[2][0] = ub; t1.uv[2][1] = vb;
            Triangle t2 = t1;
            t2.v[1] = Vec3(xb, yb, 0);
            t2.v[2] = Vec3(xa, yb, 0);
            t2.uv[1][0] = ub; t2.uv[1][1] = vb;
            t2.uv[2][0] = ua; t2.uv[2][1] = vb;
            for (Triangle* t : {&t1, &t2}) {
                t->normal = Vec3::UnitZ();
                t->texture = &texture;
                t->lambert = false;
                t->casts_shadow = false;
                t->receives_shadow = true;
                out.push_back(*t);
            }
        }
    }
}

void add_arm(std::vector<Triangle>& out, const mathkin::ArmModel& arm, const mathkin::Vec6& q,
             const Color& color) {
    const auto frames = mathkin::link_frames(arm, q);
    static const double kHalfWidths[7] = {0.045, 0.040, 0.035, 0.030, 0.026, 0.022, 0.016};

    Vec3 prev = arm.base_pose.translation;
    for (int i = 0; i <= mathkin::kNumJoints; ++i) {
        const Vec3 next = frames[i].translation;
        const Vec3 seg = next - prev;
        const double len = seg.norm();
        if (len > 1e-6) {
            const Mat3 rot = frame_along(seg);
            const double hw = kHalfWidths[i];
            add_box(out, 0.5 * (prev + next), rot, Vec3(hw, hw, 0.5 * len + hw * 0.5), color);
        }
        prev = next;
    }
    // gripper fingers straddle the tip along the tool x axis
    const auto& tip = frames[mathkin::kNumJoints];
    const Color finger_color = 0.6 * color;
    for (double side : {-1.0, 1.0}) {
        const Vec3 center = tip.apply(Vec3(side * 0.020, 0.0, -0.030));
        add_box(out, center, tip.rotation, Vec3(0.006, 0.012, 0.032), finger_color);
    }
}

void add_basket(std::vector<Triangle>& out, const scene::BasketState& b) {
    const double th = scene::BasketState::kWallThickness;
    const double hz = 0.5 * b.depth;
    const Vec3 c = b.position;
    const Mat3 I = Mat3::Identity();
    add_box(out, Vec3(c.x(), c.y() + b.half_y + th / 2, hz), I, Vec3(b.half_x + th, th / 2, hz), b.color);
    add_box(out, Vec3(c.x(), c.y() - b.half_y - th / 2, hz), I, Vec3(b.half_x + th, th / 2, hz), b.color);
    add_box(out, Vec3(c.x() + b.half_x + th / 2, c.y(), hz), I, Vec3(th / 2, b.half_y, hz), b.color);
    add_box(out, Vec3(c.x() - b.half_x - th / 2, c.y(), hz), I, Vec3(th / 2, b.half_y, hz), b.color);
    add_box(out, Vec3(c.x(), c.y(), 0.004), I, Vec3(b.half_x, b.half_y, 0.004), Color(0.75 * b.color),
            false);
}

struct ScreenVertex {
    double u, v, z;
};

// Rasterize one triangle. mode 0: color fill with z test; mode 1: shadow
// darkening of receiver pixels (depth unchanged).
void raster(Framebuffer& fb, const Camera& cam, const Triangle& tri, const ScreenVertex sv[3],
            const Color& lit, int mode) {
    const double area = (sv[1].u - sv[0].u) * (sv[2].v - sv[0].v) - (sv[1].v - sv[0].v) * (sv[2].u - sv[0].u);
    if (std::abs(area) < 1e-12) return;

    int min_x = static_cast<int>(std::floor(std::min({sv[0].u, sv[1].u, sv[2].u})));
    int max_x = static_cast<int>(std::ceil(std::max({sv[0].u, sv[1].u, sv[2].u})));
    int min_y = static_cast<int>(std::floor(std::min({sv[0].v, sv[1].v, sv[2].v})));
    int max_y = static_cast<int>(std::ceil(std::max({sv[0].v, sv[1].v, sv[2].v})));
    min_x = std::max(min_x, 0);
    min_y = std::max(min_y, 0);
    max_x = std::min(max_x, cam.width - 1);
    max_y = std::min(max_y, cam.height - 1);

    for (int y = min_y; y <= max_y; ++y) {
        for (int x = min_x; x <= max_x; ++x) {
            const double px = x + 0.5, py = y + 0.5;
            const double e0 = (sv[2].u - sv[1].u) * (py - sv[1].v) - (sv[2].v - sv[1].v) * (px - sv[1].u);
            const double e1 = (sv[0].u - sv[2].u) * (py - sv[2].v) - (sv[0].v - sv[2].v) * (px - sv[2].u);
            const double e2 = (sv[1].u - sv[0].u) * (py - sv[0].v) - (sv[1].v - sv[0].v) * (px - sv[0].u);
            const bool inside = (e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0);
            if (!inside) continue;
            const double w0 = e0 / area, w1 = e1 / area, w2 = e2 / area;
            const double z = w0 * sv[0].z + w1 * sv[1].z + w2 * sv[2].z;
            const std::size_t idx = static_cast<std::size_t>(y) * cam.width + x;

            if (mode == 1) {
                // shadow fragment: darken receiver pixels once, keep depth
                if (z > fb.depth[idx] + 1e-6) continue;
                if (!fb.receiver[idx] || fb.shadowed[idx]) continue;
                fb.shadowed[idx] = 1;
                const Color c = fb.image.get(x, y) * kShadowFactor;
                fb.image.set(x, y, c);
                continue;
            }

            if (z >= fb.depth[idx]) continue;
            fb.depth[idx] = z;
            fb.receiver[idx] = tri.receives_shadow ? 1 : 0;
            Color c = lit;
            if (tri.texture) {
                const double u = w0 * tri.uv[0][0] + w1 * tri.uv[1][0] + w2 * tri.uv[2][0];
                const double v = w0 * tri.uv[0][1] + w1 * tri.uv[1][1] + w2 * tri.uv[2][1];
                c = tri.texture->sample(u, v).cwiseProduct(lit);
            }
            fb.image.set(x, y, c);
        }
    }
}

bool project_triangle(const Camera& cam, const Vec3 verts[3], ScreenVertex out[3]) {
    for (int i = 0; i < 3; ++i) {
        const auto p = project_point(cam, verts[i]);
        if (!p || p->depth > cam.far) return false;
        out[i] = {p->u, p->v, p->depth};
    }
    return true;
}

}  // namespace

Image render_scene(const Scene& s, const mathkin::ArmModel& arm, const mathkin::Vec6& arm_angles,
             const Camera& camera) {
    Framebuffer fb(camera.width, camera.height);

    // screen-space background fill
    const double bg_shade = flat_shade(s.light);
    for (int y = 0; y < camera.height; ++y) {
        for (int x = 0; x < camera.width; ++x) {
            const double u = (x + 0.5) / camera.width;
            const double v = (y + 0.5) / camera.height;
            fb.image.set(x, y, s.background_texture.sample(u, v) * bg_shade);
        }
    }

    std::vector<Triangle> table;
    add_table(table, s.table_texture);

    std::vector<Triangle> objects;
    objects.reserve(512);
    add_arm(objects, arm.with_base_height(s.arm_base_height), arm_angles, s.arm_color);
    add_box(objects, s.cube.position, Mat3::Identity(), Vec3::Constant(s.cube.half()), s.cube.color);
    add_basket(objects, s.basket);
    for (const auto& d : s.distractors) {
        switch (d.shape) {
            case scene::DistractorShape::kBox:
                add_box(objects, d.position, Mat3::Identity(), d.size, d.color);
                break;
            case scene::DistractorShape::kSphere:
                add_sphere(objects, d.position, d.size.x(), d.color);
                break;
            case scene::DistractorShape::kCylinder:
                add_cylinder(objects, d.position - Vec3(0, 0, d.size.z()), d.size.x(), 2.0 * d.size.z(),
                             d.color);
                break;
        }
    }

    ScreenVertex sv[3];
    for (const auto& t : table) {
        if (!project_triangle(camera, t.v, sv)) continue;
        raster(fb, camera, t, sv, Color::Constant(flat_shade(s.light)), 0);
    }

    // planar projected shadows, darkening table pixels only
    if (s.shadows_enabled && s.light.direction.z() < -1e-3) {
        const Vec3 d = s.light.direction;
        for (const auto& t : objects) {
            if (!t.casts_shadow) continue;
            Triangle flat = t;
            bool ok = true;
            for (int i = 0; i < 3; ++i) {
                const Vec3& p = t.v[i];
                if (p.z() < 0) { ok = false; break; }
                flat.v[i] = p - d * (p.z() / d.z());
            }
            if (!ok || !project_triangle(camera, flat.v, sv)) continue;
            raster(fb, camera, flat, sv, Color::Zero(), 1);
        }
    }

    for (const auto& t : objects) {
        if (!project_triangle(camera, t.v, sv)) continue;
        const double shade = object_shade(t.normal, s.light);
        raster(fb, camera, t, sv, t.color * shade, 0);
    }
    return fb.image;
}

Image render_scene(const Scene& s, const mathkin::ArmModel& arm, const mathkin::Vec6& arm_angles) {
    return render_scene(s, arm, arm_angles, Camera::from(s.camera));
}

void overlay_marker(Image& img, const Camera& camera, const Vec3& world_point, const Color& color) {
    const auto p = project_point(camera, world_point);
    if (!p) return;
    const int cx = static_cast<int>(std::lround(p->u));
    const int cy = static_cast<int>(std::lround(p->v));
    if (cx < 0 || cx >= img.width || cy < 0 || cy >= img.height) return;
    for (int o = -2; o <= 2; ++o) {
        if (cx + o >= 0 && cx + o < img.width) img.set(cx + o, cy, color);
        if (cy + o >= 0 && cy + o < img.height) img.set(cx, cy + o, color);
    }
}

}  // namespace randgrasp::render
