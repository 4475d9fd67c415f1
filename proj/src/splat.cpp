// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/splat.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "recap/parallel.hpp"

namespace recap {

namespace {
constexpr double kCovFloor = 0.3;           // px^2 anti-aliasing floor
constexpr double kCutoffMahalanobis2 = 9.0; // 3 sigma
constexpr double kTransmittanceFloor = 1e-4;
constexpr double kMaxAlpha = 1.0 - 1e-4;
}  // namespace

Camera Camera::look_at(const Vec3& eye, const Vec3& target, const Vec3& up,
                       double fov_x_deg, int width, int height) {
  const Vec3 forward = normalize(target - eye);       // +z in camera space
  const Vec3 right = normalize(cross(forward, up));   // +x
  const Vec3 down = cross(forward, right);            // +y (rows grow downward)
  Camera cam;
  cam.rotation.m = {right.x, right.y, right.z, down.x, down.y, down.z,
                    forward.x, forward.y, forward.z};
  cam.translation = -(cam.rotation * eye);
  cam.width = width;
  cam.height = height;
  cam.fx = (width * 0.5) / std::tan(fov_x_deg * kPi / 180.0 * 0.5);
  cam.fy = cam.fx;
  cam.cx = width * 0.5;
  cam.cy = height * 0.5;
  return cam;
}

Mat3 covariance_matrix(const GaussianPoint& point) {
  const Mat3 r = rotation_matrix(normalize(point.rotation));
  const Vec3 s2{point.scale.x * point.scale.x, point.scale.y * point.scale.y,
                point.scale.z * point.scale.z};
  return r * diag(s2) * transpose(r);
}

double gaussian_weight(const Vec3& x, const GaussianPoint& point) {
  const Vec3 s2{point.scale.x * point.scale.x, point.scale.y * point.scale.y,
                point.scale.z * point.scale.z};
  const double cond = max_component(s2) / min_component(s2);
  if (!(cond <= 1e12))
    throw DegenerateCovarianceError("gaussian_weight: covariance condition number > 1e12");
  const Mat3 r = rotation_matrix(normalize(point.rotation));
  // Sigma^-1 = R diag(1/s^2) R^T; Mahalanobis in the rotated frame.
  const Vec3 d = x - point.position;
  const Vec3 local = transpose(r) * d;
  const double m2 = local.x * local.x / s2.x + local.y * local.y / s2.y +
                    local.z * local.z / s2.z;
  return std::exp(-0.5 * m2);
}

Vec3 shortest_axis_normal(const GaussianPoint& point, const Vec3& view_dir) {
  int axis = 0;
  if (point.scale.y < point.scale[axis]) axis = 1;
  if (point.scale.z < point.scale[axis]) axis = 2;
  const Mat3 r = rotation_matrix(normalize(point.rotation));
  Vec3 n{r(0, axis), r(1, axis), r(2, axis)};  // column = rotated basis vector
  if (dot(n, -view_dir) < 0.0) n = -n;
  return n;
}

ProjectedPoint project(const GaussianPoint& point, const Camera& cam, double near) {
  ProjectedPoint out;
  const Vec3 p = cam.rotation * point.position + cam.translation;
  if (p.z <= near) return out;  // culled

  const double inv_z = 1.0 / p.z;
  out.center = {cam.fx * p.x * inv_z + cam.cx, cam.fy * p.y * inv_z + cam.cy};
  out.depth = p.z;

  // cov2d = J W Sigma W^T J^T with J the perspective Jacobian at the mean.
  const Mat3 cov_cam = cam.rotation * covariance_matrix(point) * transpose(cam.rotation);
  const double j00 = cam.fx * inv_z, j02 = -cam.fx * p.x * inv_z * inv_z;
  const double j11 = cam.fy * inv_z, j12 = -cam.fy * p.y * inv_z * inv_z;
  const Vec3 row0{j00, 0.0, j02};
  const Vec3 row1{0.0, j11, j12};
  out.cov_a = dot(row0, cov_cam * row0) + kCovFloor;
  out.cov_b = dot(row0, cov_cam * row1);
  out.cov_c = dot(row1, cov_cam * row1) + kCovFloor;
  out.valid = true;
  return out;
}

SplatData prepare_splats(const Scene& scene, const Camera& cam) {
  SplatData data;
  const size_t n = scene.size();
  data.projected.resize(n);
  data.normals.resize(n);
  data.view_dirs.resize(n);
  const Vec3 cam_pos = cam.position();
  for (size_t i = 0; i < n; ++i) {
    data.projected[i] = project(scene[i], cam);
    if (!data.projected[i].valid) continue;
    const Vec3 view_dir = normalize(scene[i].position - cam_pos);
    data.view_dirs[i] = view_dir;
    data.normals[i] = shortest_axis_normal(scene[i], view_dir);
    data.order.push_back(static_cast<int>(i));
  }
  std::sort(data.order.begin(), data.order.end(), [&](int a, int b) {
    if (data.projected[a].depth != data.projected[b].depth)
      return data.projected[a].depth < data.projected[b].depth;
    return a < b;  // stable tie-break by point index
  });
  return data;
}

namespace {

struct SplatKernel {
  double inv_a, inv_b, inv_c;  // inverse 2x2 covariance
  double radius;               // 3 sigma in pixels
};

SplatKernel make_kernel(const ProjectedPoint& p) {
  const double det = p.cov_a * p.cov_c - p.cov_b * p.cov_b;
  const double inv_det = 1.0 / det;
  const double trace_half = 0.5 * (p.cov_a + p.cov_c);
  const double disc = std::sqrt(std::max(0.0, trace_half * trace_half - det));
  const double lambda_max = trace_half + disc;
  return {p.cov_c * inv_det, -p.cov_b * inv_det, p.cov_a * inv_det,
          3.0 * std::sqrt(lambda_max)};
}

double splat_falloff(const SplatKernel& k, const ProjectedPoint& p, double px, double py) {
  const double dx = px - p.center.x;
  const double dy = py - p.center.y;
  const double m2 = k.inv_a * dx * dx + 2.0 * k.inv_b * dx * dy + k.inv_c * dy * dy;
  if (m2 > kCutoffMahalanobis2) return 0.0;
  return std::exp(-0.5 * m2);
}

}  // namespace

RenderedImage composite(const Scene& scene, const Camera& cam, const SplatData& splats,
                        const std::vector<Rgb>& point_colors, const PostProcessConfig& cfg) {
  RenderedImage img;
  img.color = Image3(cam.width, cam.height);
  img.linear = Image3(cam.width, cam.height);
  img.normal = Image3(cam.width, cam.height);
  img.depth = Image1(cam.width, cam.height);
  img.alpha = Image1(cam.width, cam.height);

  std::vector<SplatKernel> kernels(scene.size());
  for (int i : splats.order) kernels[i] = make_kernel(splats.projected[i]);

  parallel_for(0, static_cast<int64_t>(cam.width) * cam.height, [&](int64_t idx, int) {
    const int y = static_cast<int>(idx / cam.width);
    const int x = static_cast<int>(idx % cam.width);
    const double px = x + 0.5, py = y + 0.5;

    Rgb color{0, 0, 0};
    Vec3 normal{0, 0, 0};
    double depth_acc = 0.0, alpha_acc = 0.0, transmittance = 1.0;

    for (int i : splats.order) {
      const ProjectedPoint& p = splats.projected[i];
      const SplatKernel& k = kernels[i];
      if (std::fabs(px - p.center.x) > k.radius || std::fabs(py - p.center.y) > k.radius)
        continue;
      const double g = splat_falloff(k, p, px, py);
      if (g <= 0.0) continue;
      const double a = std::min(scene[i].opacity * g, kMaxAlpha);
      if (a < 1e-5) continue;
      const double w = transmittance * a;
      color += point_colors[i] * w;
      normal += splats.normals[i] * w;
      depth_acc += p.depth * w;
      alpha_acc += w;
      transmittance *= 1.0 - a;
      if (transmittance < kTransmittanceFloor) break;
    }

    img.linear.at(x, y) = color;
    img.color.at(x, y) = postprocess(color, cfg);
    img.alpha.at(x, y) = alpha_acc;
    img.depth.at(x, y) = alpha_acc > 1e-9 ? depth_acc / alpha_acc : 0.0;
    const double nlen = length(normal);
    img.normal.at(x, y) = nlen > 1e-9 ? normal / nlen : Vec3{0, 0, 0};
  });
  return img;
}

RenderedImage render(const Scene& scene, const Camera& cam, const PrefilteredEnv& env,
                     const BrdfLut& lut, const PostProcessConfig& cfg) {
  if (scene.empty()) throw std::invalid_argument("render: empty scene");
  SplatData splats = prepare_splats(scene, cam);
  std::vector<Rgb> colors(scene.size(), Rgb{0, 0, 0});
  for (int i : splats.order)
    colors[i] = shade_proposed(scene[i].material, splats.normals[i], -splats.view_dirs[i],
                               env, lut);
  return composite(scene, cam, splats, colors, cfg);
}

RenderedImage render_geometry(const Scene& scene, const Camera& cam) {
  SplatData splats = prepare_splats(scene, cam);
  std::vector<Rgb> colors(scene.size(), Rgb{0, 0, 0});
  return composite(scene, cam, splats, colors, PostProcessConfig{});
}

std::vector<Rgb> blend_backward(const Scene& scene, const Camera& cam,
                                const SplatData& splats, const Image3& d_linear) {
  std::vector<SplatKernel> kernels(scene.size());
  for (int i : splats.order) kernels[i] = make_kernel(splats.projected[i]);

  const int workers = thread_count();
  std::vector<std::vector<Rgb>> partial(workers,
                                        std::vector<Rgb>(scene.size(), Rgb{0, 0, 0}));

  parallel_for(0, static_cast<int64_t>(cam.width) * cam.height, [&](int64_t idx, int worker) {
    const int y = static_cast<int>(idx / cam.width);
    const int x = static_cast<int>(idx % cam.width);
    const Rgb g = d_linear.at(x, y);
    if (g.x == 0.0 && g.y == 0.0 && g.z == 0.0) return;
    const double px = x + 0.5, py = y + 0.5;
    double transmittance = 1.0;
    auto& acc = partial[worker];
    for (int i : splats.order) {
      const ProjectedPoint& p = splats.projected[i];
      const SplatKernel& k = kernels[i];
      if (std::fabs(px - p.center.x) > k.radius || std::fabs(py - p.center.y) > k.radius)
        continue;
      const double gauss = splat_falloff(k, p, px, py);
      if (gauss <= 0.0) continue;
      const double a = std::min(scene[i].opacity * gauss, kMaxAlpha);
      if (a < 1e-5) continue;
      acc[i] += g * (transmittance * a);
      transmittance *= 1.0 - a;
      if (transmittance < kTransmittanceFloor) break;
    }
  });

  std::vector<Rgb> grads(scene.size(), Rgb{0, 0, 0});
  for (int w = 0; w < workers; ++w)
    for (size_t i = 0; i < grads.size(); ++i) grads[i] += partial[w][i];
  return grads;
}

Image3 depth_to_normal(const Image1& depth, const Image1& alpha, const Camera& cam,
                       double alpha_threshold) {
  const int w = depth.width, h = depth.height;
  Image3 normals(w, h);
  auto covered = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h && alpha.at(x, y) > alpha_threshold;
  };
  auto backproject = [&](int x, int y) {
    const double z = depth.at(x, y);
    return Vec3{(x + 0.5 - cam.cx) / cam.fx * z, (y + 0.5 - cam.cy) / cam.fy * z, z};
  };
  const Mat3 cam_to_world = transpose(cam.rotation);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!covered(x, y) || !covered(x - 1, y) || !covered(x + 1, y) ||
          !covered(x, y - 1) || !covered(x, y + 1))
        continue;  // flagged invalid: stays zero
      const Vec3 tx = (backproject(x + 1, y) - backproject(x - 1, y)) * 0.5;
      const Vec3 ty = (backproject(x, y + 1) - backproject(x, y - 1)) * 0.5;
      Vec3 n = cross(tx, ty);
      const double len = length(n);
      if (len < 1e-12) continue;
      n = n / len;
      // Orient toward the camera (camera space looks along +z).
      if (n.z > 0.0) n = -n;
      normals.at(x, y) = cam_to_world * n;
    }
  }
  return normals;
}

double loss_depth_normal(const Scene& scene, const Camera& cam, double lambda_dn) {
  if (lambda_dn == 0.0) return 0.0;
  const RenderedImage img = render_geometry(scene, cam);
  const Image3 depth_normals = depth_to_normal(img.depth, img.alpha, cam);

  double sum = 0.0;
  int count = 0;
  for (int y = 0; y < cam.height; ++y)
    for (int x = 0; x < cam.width; ++x) {
      const Vec3 nd = depth_normals.at(x, y);
      if (nd.x == 0.0 && nd.y == 0.0 && nd.z == 0.0) continue;
      const Vec3 nb = img.normal.at(x, y);
      if (length(nb) < 0.5) continue;
      const Vec3 d = nb - nd;
      sum += dot(d, d);
      ++count;
    }
  if (count == 0) {
    std::cerr << "loss_depth_normal: no valid pixels\n";
    return 0.0;
  }
  return lambda_dn * sum / count;
}

}  // namespace recap
