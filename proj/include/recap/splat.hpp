// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <vector>

#include "recap/image.hpp"
#include "recap/material.hpp"
#include "recap/shading.hpp"
#include "recap/vec.hpp"

namespace recap {

struct GaussianPoint {
  Vec3 position{0, 0, 0};
  Vec3 scale{1, 1, 1};        // per-axis standard deviation, > 0
  Quat rotation;              // unit
  double opacity = 1.0;       // in (0, 1]
  MaterialParams material;
};

using Scene = std::vector<GaussianPoint>;

// Pinhole camera. Camera space is +z forward, +x right, +y down (pixel row
// direction); world-to-camera: x_cam = rotation * x_world + translation.
struct Camera {
  Mat3 rotation;
  Vec3 translation{0, 0, 0};
  double fx = 1.0, fy = 1.0, cx = 0.0, cy = 0.0;
  int width = 0, height = 0;

  Vec3 position() const { return -(transpose(rotation) * translation); }

  // Camera at `eye` looking toward `target`, `up` approximately up in world
  // space (+y by convention), horizontal field of view in degrees.
  static Camera look_at(const Vec3& eye, const Vec3& target, const Vec3& up,
                        double fov_x_deg, int width, int height);
};

struct RenderedImage {
  Image3 color;    // post-processed, in [0,1]
  Image3 linear;   // pre-postprocess radiance (black background)
  Image3 normal;   // alpha-blended unit normals (zero where uncovered)
  Image1 depth;    // expected camera-space z over the covered fraction
  Image1 alpha;
};

struct DegenerateCovarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unnormalized 3D Gaussian falloff exp(-0.5 * mahalanobis^2); 1 at the mean.
// Throws DegenerateCovarianceError when the covariance condition number
// exceeds 1e12.
double gaussian_weight(const Vec3& x, const GaussianPoint& point);

Mat3 covariance_matrix(const GaussianPoint& point);

// Rotated principal axis of the smallest scale component, flipped to face the
// camera: returns n with dot(n, -view_dir) > 0. view_dir points from the
// camera toward the point; ties in scale break toward the lower axis index.
Vec3 shortest_axis_normal(const GaussianPoint& point, const Vec3& view_dir);

struct ProjectedPoint {
  bool valid = false;
  Vec2 center{0, 0};            // pixel coordinates
  double cov_a = 0, cov_b = 0, cov_c = 0;  // 2x2 screen covariance [[a,b],[b,c]]
  double depth = 0;             // camera-space z
};

// Perspective projection of mean and covariance (first-order Jacobian), with
// the standard +0.3 px^2 isotropic floor. Points behind the near plane are
// culled, not an error.
ProjectedPoint project(const GaussianPoint& point, const Camera& cam, double near = 0.01);

// Per-point data shared by the forward and backward blending passes.
struct SplatData {
  std::vector<ProjectedPoint> projected;
  std::vector<Vec3> normals;        // world-space, camera-facing
  std::vector<Vec3> view_dirs;      // camera -> point, unit
  std::vector<int> order;           // indices of valid points, front to back
};

SplatData prepare_splats(const Scene& scene, const Camera& cam);

// Full forward render: per-point tint shading, front-to-back alpha blending
// (footprints truncated at 3 sigma, transmittance cut at 1e-4), black
// background, then post-processing.
RenderedImage render(const Scene& scene, const Camera& cam, const PrefilteredEnv& env,
                     const BrdfLut& lut, const PostProcessConfig& cfg);

// As render(), but reuses prepared splats and externally shaded point colors;
// lets the optimizer cache shading details for the backward pass.
RenderedImage composite(const Scene& scene, const Camera& cam, const SplatData& splats,
                        const std::vector<Rgb>& point_colors, const PostProcessConfig& cfg);

// Geometry-only render (depth / alpha / normal images, color left black).
RenderedImage render_geometry(const Scene& scene, const Camera& cam);

// Adjoint of the blending: distributes per-pixel dLoss/dLinear onto per-point
// dLoss/dColor. Blending weights depend only on geometry, which is fixed.
// Deterministic: per-worker buffers merged in worker order.
std::vector<Rgb> blend_backward(const Scene& scene, const Camera& cam,
                                const SplatData& splats, const Image3& d_linear);

// Normals from back-projected central differences of the depth image; pixels
// without enough covered neighbors are left at zero and reported invalid.
// Output normals are world-space, oriented toward the camera.
Image3 depth_to_normal(const Image1& depth, const Image1& alpha, const Camera& cam,
                       double alpha_threshold = 0.5);

// lambda * mean over valid pixels of |n_blend - n_depth|^2. Zero (with a
// warning to stderr) when no pixel is valid.
double loss_depth_normal(const Scene& scene, const Camera& cam, double lambda_dn);

}  // namespace recap
