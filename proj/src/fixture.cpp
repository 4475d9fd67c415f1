// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/fixture.hpp"

#include <cmath>
#include <stdexcept>

#include "recap/prefilter.hpp"

namespace recap {

EnvFunction env_sky_gradient() {
  return [](const Vec3& d) {
    const double up = 0.5 * (d.y + 1.0);  // 0 at nadir, 1 at zenith
    const Rgb zenith{1.6, 1.4, 1.1};
    const Rgb floor{0.08, 0.12, 0.22};
    return lerp(floor, zenith, up * up);
  };
}

EnvFunction env_sunset_gradient() {
  return [](const Vec3& d) {
    const Vec3 sun = normalize(Vec3{0.8, 0.25, -0.55});
    const double lobe = std::pow(std::max(0.0, dot(d, sun)), 4.0);
    const double up = 0.5 * (d.y + 1.0);
    const Rgb base = lerp(Rgb{0.20, 0.10, 0.16}, Rgb{0.35, 0.28, 0.45}, up);
    return base + Rgb{2.4, 1.1, 0.35} * lobe;
  };
}

EnvFunction env_three_point() {
  return [](const Vec3& d) {
    auto blob = [&](const Vec3& dir, const Rgb& color, double sharp) {
      return color * std::pow(std::max(0.0, dot(d, normalize(dir))), sharp);
    };
    return Rgb{0.04, 0.04, 0.05} + blob({1, 0.8, 0.3}, {3.2, 2.9, 2.4}, 14.0) +
           blob({-0.8, 0.4, -0.7}, {0.6, 1.0, 2.2}, 10.0) +
           blob({0.1, -0.3, 1}, {1.4, 0.5, 0.4}, 8.0);
  };
}

EnvFunction env_single_hot() {
  return [](const Vec3& d) {
    const double lobe = std::pow(std::max(0.0, d.x), 400.0);
    return Rgb{0.05, 0.05, 0.05} + Rgb{40, 38, 34} * lobe;
  };
}

EnvFunction env_by_name(const std::string& name) {
  if (name == "sky") return env_sky_gradient();
  if (name == "sunset") return env_sunset_gradient();
  if (name == "threepoint") return env_three_point();
  if (name == "hot") return env_single_hot();
  throw std::invalid_argument("unknown environment '" + name +
                              "' (expected sky|sunset|threepoint|hot)");
}

CubeMap bake_env(const EnvFunction& fn, int face_size) {
  CubeMap map(face_size);
  for (int face = 0; face < 6; ++face)
    for (int y = 0; y < face_size; ++y)
      for (int x = 0; x < face_size; ++x)
        map.at(face, x, y) =
            fn(texel_direction(face, (x + 0.5) / face_size, (y + 0.5) / face_size));
  return map;
}

namespace {

// Quaternion rotating +z onto the given unit axis.
Quat z_to_axis(const Vec3& axis) {
  const Vec3 z{0, 0, 1};
  const double c = dot(z, axis);
  if (c > 1.0 - 1e-12) return Quat{};
  if (c < -1.0 + 1e-12) return Quat{0, 1, 0, 0};  // 180 degrees about x
  const Vec3 a = cross(z, axis);
  Quat q{1.0 + c, a.x, a.y, a.z};
  return normalize(q);
}

}  // namespace

Scene make_sphere_scene(int n_points, double radius, const Rgb& color_top,
                        const Rgb& color_bottom, const Rgb& tint, double roughness,
                        double opacity) {
  Scene scene;
  scene.reserve(n_points);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double spacing = std::sqrt(4.0 * kPi * radius * radius / n_points);
  for (int i = 0; i < n_points; ++i) {
    const double y = 1.0 - 2.0 * (i + 0.5) / n_points;
    const double r = std::sqrt(std::max(0.0, 1.0 - y * y));
    const double phi = golden * i;
    const Vec3 normal{r * std::cos(phi), y, r * std::sin(phi)};

    GaussianPoint p;
    p.position = normal * radius;
    p.scale = {0.7 * spacing, 0.7 * spacing, 0.07 * spacing};  // flat, z = normal
    p.rotation = z_to_axis(normal);
    p.opacity = opacity;
    p.material.basecolor = y > 0 ? color_top : color_bottom;
    p.material.specular_tint = tint;
    p.material.roughness = roughness;
    p.material.metallic = 0.0;
    scene.push_back(p);
  }
  return scene;
}

Scene make_box_scene(int per_edge, double half_extent, const Rgb& color_x,
                     const Rgb& color_y, const Rgb& color_z, const Rgb& tint,
                     double roughness) {
  Scene scene;
  const double step = 2.0 * half_extent / per_edge;
  const Rgb colors[3] = {color_x, color_y, color_z};
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign = -1; sign <= 1; sign += 2) {
      Vec3 normal{0, 0, 0};
      normal[axis] = sign;
      for (int i = 0; i < per_edge; ++i)
        for (int j = 0; j < per_edge; ++j) {
          Vec3 pos;
          pos[axis] = sign * half_extent;
          pos[(axis + 1) % 3] = -half_extent + (i + 0.5) * step;
          pos[(axis + 2) % 3] = -half_extent + (j + 0.5) * step;
          GaussianPoint p;
          p.position = pos;
          p.scale = {0.75 * step, 0.75 * step, 0.05 * step};
          p.rotation = z_to_axis(normal);
          p.opacity = 0.95;
          p.material.basecolor = colors[axis];
          p.material.specular_tint = tint;
          p.material.roughness = roughness;
          scene.push_back(p);
        }
    }
  }
  return scene;
}

std::vector<Camera> make_ring_cameras(int count, double distance, double elevation_deg,
                                      double fov_x_deg, int width, int height,
                                      double azimuth_offset_deg) {
  std::vector<Camera> cams;
  const double el = elevation_deg * kPi / 180.0;
  for (int i = 0; i < count; ++i) {
    const double az = azimuth_offset_deg * kPi / 180.0 + 2.0 * kPi * i / count;
    const Vec3 eye{distance * std::cos(el) * std::cos(az), distance * std::sin(el),
                   distance * std::cos(el) * std::sin(az)};
    cams.push_back(Camera::look_at(eye, {0, 0, 0}, {0, 1, 0}, fov_x_deg, width, height));
  }
  return cams;
}

std::vector<Image3> render_targets(const Scene& scene, const CubeMap& env_raw,
                                   const std::vector<Camera>& cams,
                                   const PostProcessConfig& cfg, int prefilter_samples) {
  const PrefilteredEnv env = build_prefiltered_env(env_raw, prefilter_samples);
  static const BrdfLut lut = integrate_brdf_lut(64, 1024);
  std::vector<Image3> targets;
  targets.reserve(cams.size());
  for (const Camera& cam : cams) targets.push_back(render(scene, cam, env, lut, cfg).color);
  return targets;
}

AblationFixture make_two_env_fixture(int image_size, int views_per_env, int points,
                                     int env_size) {
  AblationFixture fx;
  fx.scene = make_sphere_scene(points, 1.0, {0.75, 0.30, 0.22}, {0.20, 0.35, 0.70},
                               {0.30, 0.30, 0.30}, 0.25);

  const PostProcessConfig physical;  // nonneg + clip + gamma
  const CubeMap env_a = bake_env(env_sky_gradient(), env_size);
  const CubeMap env_b = bake_env(env_three_point(), env_size);

  EnvironmentViews views_a, views_b;
  views_a.cameras = make_ring_cameras(views_per_env, 3.2, 18.0, 45.0, image_size,
                                      image_size, 0.0);
  views_b.cameras = make_ring_cameras(views_per_env, 3.2, -12.0, 45.0, image_size,
                                      image_size, 30.0);
  views_a.targets = render_targets(fx.scene, env_a, views_a.cameras, physical);
  views_b.targets = render_targets(fx.scene, env_b, views_b.cameras, physical);
  fx.training.environments = {views_a, views_b};

  const CubeMap env_c = bake_env(env_sunset_gradient(), env_size);
  fx.holdout_hdr = cube_to_latlong(env_c, 2 * env_size);
  fx.holdout_cams = make_ring_cameras(4, 3.2, 8.0, 45.0, image_size, image_size, 12.0);
  // Held-out ground truth goes through the same lat-long round trip the
  // relighting path sees, so resampling does not bias the comparison.
  const CubeMap env_c_rt = latlong_to_cube(fx.holdout_hdr, env_size);
  fx.holdout_targets = render_targets(fx.scene, env_c_rt, fx.holdout_cams, physical);
  return fx;
}

}  // namespace recap
