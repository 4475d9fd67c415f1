// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "recap/cubemap.hpp"
#include "recap/optim.hpp"
#include "recap/splat.hpp"

namespace recap {

// Analytic environment radiance as a function of direction.
using EnvFunction = std::function<Rgb(const Vec3&)>;

// Smooth warm-sky gradient: bright warm zenith falling to a dim cool floor.
EnvFunction env_sky_gradient();
// Smooth low-sun gradient with a strong azimuthal lobe; complements the sky.
EnvFunction env_sunset_gradient();
// Three soft colored light blobs over a dark base; peaks exceed 1 (HDR).
EnvFunction env_three_point();
// Dim base with one concentrated bright spot toward +x.
EnvFunction env_single_hot();

// Named lookup for the CLI: sky | sunset | threepoint | hot.
EnvFunction env_by_name(const std::string& name);

CubeMap bake_env(const EnvFunction& fn, int face_size);

// Flattened Gaussians tiling a sphere (Fibonacci spiral), shortest axis
// radial. Two-tone basecolor split across hemispheres; uniform tint and
// roughness.
Scene make_sphere_scene(int n_points, double radius, const Rgb& color_top,
                        const Rgb& color_bottom, const Rgb& tint, double roughness,
                        double opacity = 0.95);

// Axis-aligned box shell made of flat Gaussians, one color per face pair.
Scene make_box_scene(int per_edge, double half_extent, const Rgb& color_x,
                     const Rgb& color_y, const Rgb& color_z, const Rgb& tint,
                     double roughness);

// Cameras on a ring around the origin at the given elevation.
std::vector<Camera> make_ring_cameras(int count, double distance, double elevation_deg,
                                      double fov_x_deg, int width, int height,
                                      double azimuth_offset_deg = 0.0);

// Ground-truth captures: raw environment prefiltered at high quality, scene
// rendered per camera with the given post-processing.
std::vector<Image3> render_targets(const Scene& scene, const CubeMap& env_raw,
                                   const std::vector<Camera>& cams,
                                   const PostProcessConfig& cfg, int prefilter_samples = 256);

// The standard 2-training-env + held-out-env toy fixture used by the
// multi-environment experiments and the post-processing ablation.
AblationFixture make_two_env_fixture(int image_size = 24, int views_per_env = 6,
                                     int points = 220, int env_size = 16);

}  // namespace recap
