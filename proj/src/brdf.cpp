// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/brdf.hpp"

#include <cmath>
#include <stdexcept>

#include "recap/parallel.hpp"
#include "recap/rng.hpp"

namespace recap {

double ggx_ndf(double roughness, double n_dot_h) {
  const double alpha = roughness_to_alpha(roughness);
  const double a2 = alpha * alpha;
  const double d = n_dot_h * n_dot_h * (a2 - 1.0) + 1.0;
  return a2 / (kPi * d * d);
}

double smith_g(double roughness, double n_dot_l, double n_dot_v) {
  const double k = roughness_to_alpha(roughness) / 2.0;
  const double gl = n_dot_l / (n_dot_l * (1.0 - k) + k);
  const double gv = n_dot_v / (n_dot_v * (1.0 - k) + k);
  return gl * gv;
}

Rgb fresnel_schlick(const Rgb& f0, double v_dot_h) {
  const double c = 1.0 - v_dot_h;
  const double c2 = c * c;
  const double fc = c2 * c2 * c;
  return f0 + (Rgb{1, 1, 1} - f0) * fc;
}

ShadingGeometry make_geometry(const Vec3& n, const Vec3& v, const Vec3& l) {
  return {n, v, l, normalize(v + l)};
}

Rgb eval_lobe_brdf(const LobeBrdf& brdf, const ShadingGeometry& geom) {
  const double nl = dot(geom.n, geom.l);
  const double nv = dot(geom.n, geom.v);
  if (nl <= 0.0 || nv <= 0.0) return {0, 0, 0};
  Rgb f{0, 0, 0};
  if (brdf.enable_diffuse) f += brdf.diffuse / kPi;
  if (brdf.enable_specular) {
    const double nh = std::clamp(dot(geom.n, geom.h), 0.0, 1.0);
    const double vh = std::clamp(dot(geom.v, geom.h), 0.0, 1.0);
    const double d = ggx_ndf(brdf.roughness, nh);
    const double g = smith_g(brdf.roughness, nl, nv);
    f += fresnel_schlick(brdf.f0, vh) * (d * g / (4.0 * nl * nv));
  }
  return f;
}

LobeBrdf metallic_lobe(const MaterialParams& mat) {
  LobeBrdf lobe;
  lobe.diffuse = mat.basecolor * (1.0 - mat.metallic);
  lobe.f0 = mat.basecolor * mat.metallic +
            Rgb{kDielectricSpecular, kDielectricSpecular, kDielectricSpecular} *
                (1.0 - mat.metallic);
  lobe.roughness = mat.roughness;
  return lobe;
}

LobeBrdf tint_lobe(const MaterialParams& mat) {
  LobeBrdf lobe;
  lobe.diffuse = mat.basecolor;
  lobe.f0 = mat.specular_tint;
  lobe.roughness = mat.roughness;
  return lobe;
}

Rgb eval_brdf(const MaterialParams& mat, const ShadingGeometry& geom) {
  return eval_lobe_brdf(metallic_lobe(mat), geom);
}

namespace {

Vec3 importance_sample_ggx(const Vec2& u, double alpha) {
  const double phi = 2.0 * kPi * u.x;
  const double a2 = alpha * alpha;
  const double cos_theta2 = (1.0 - u.y) / (1.0 + (a2 - 1.0) * u.y);
  const double cos_theta = std::sqrt(cos_theta2);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta2));
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

Vec3 sample_cosine_hemisphere(const Vec2& u) {
  const double phi = 2.0 * kPi * u.x;
  const double cos_theta = std::sqrt(1.0 - u.y);
  const double sin_theta = std::sqrt(u.y);
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

}  // namespace

BrdfLut integrate_brdf_lut(int resolution, int samples, uint32_t seed) {
  if (resolution < 16) throw std::invalid_argument("integrate_brdf_lut: resolution must be >= 16");
  if (samples < 256) throw std::invalid_argument("integrate_brdf_lut: samples must be >= 256");

  BrdfLut lut;
  lut.resolution = resolution;
  lut.seed = seed;
  lut.table.resize(static_cast<size_t>(resolution) * resolution);

  parallel_for(0, static_cast<int64_t>(resolution) * resolution, [&](int64_t idx, int) {
    const int r_idx = static_cast<int>(idx / resolution);
    const int mu_idx = static_cast<int>(idx % resolution);
    const double mu = (mu_idx + 0.5) / resolution;
    const double roughness = (r_idx + 0.5) / resolution;
    const double alpha = roughness_to_alpha(roughness);

    const Vec3 v{std::sqrt(std::max(0.0, 1.0 - mu * mu)), 0.0, mu};

    uint64_t h = hash_combine(hash_combine(1469598103934665603ULL, seed), idx);
    const Vec2 scramble{double(h & 0xffffffffu) / 4294967296.0,
                        double((h >> 32) & 0xffffffffu) / 4294967296.0};

    double b1 = 0.0, b2 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Vec2 u = hammersley(static_cast<uint32_t>(i), static_cast<uint32_t>(samples),
                                scramble);
      const Vec3 half = importance_sample_ggx(u, alpha);
      const Vec3 l = half * (2.0 * dot(v, half)) - v;
      const double nl = l.z;
      if (nl <= 0.0) continue;
      const double nh = std::max(half.z, 0.0);
      const double vh = std::max(dot(v, half), 0.0);
      if (nh <= 0.0 || vh <= 0.0) continue;
      const double g = smith_g(roughness, nl, mu);
      const double g_vis = g * vh / (nh * mu);
      const double c = 1.0 - vh;
      const double c2 = c * c;
      const double fc = c2 * c2 * c;
      b1 += (1.0 - fc) * g_vis;
      b2 += fc * g_vis;
    }
    lut.table[idx] = {b1 / samples, b2 / samples};
  });
  return lut;
}

namespace {

struct LutCell {
  int i0, i1, j0, j1;
  double tx, ty;
};

LutCell lut_cell(const BrdfLut& lut, double mu, double roughness) {
  const int res = lut.resolution;
  const double fx = std::clamp(mu, 1e-6, 1.0) * res - 0.5;
  const double fy = std::clamp(roughness, 0.0, 1.0) * res - 0.5;
  int i0 = static_cast<int>(std::floor(fx));
  int j0 = static_cast<int>(std::floor(fy));
  const double tx = fx - i0;
  const double ty = fy - j0;
  auto clampi = [res](int i) { return std::clamp(i, 0, res - 1); };
  return {clampi(i0), clampi(i0 + 1), clampi(j0), clampi(j0 + 1), tx, ty};
}

}  // namespace

Vec2 lut_lookup(const BrdfLut& lut, double mu, double roughness) {
  const LutCell c = lut_cell(lut, mu, roughness);
  auto mix = [&](auto get) {
    const double v00 = get(lut.at(c.i0, c.j0));
    const double v10 = get(lut.at(c.i1, c.j0));
    const double v01 = get(lut.at(c.i0, c.j1));
    const double v11 = get(lut.at(c.i1, c.j1));
    return (v00 * (1 - c.tx) + v10 * c.tx) * (1 - c.ty) +
           (v01 * (1 - c.tx) + v11 * c.tx) * c.ty;
  };
  return {mix([](const Vec2& e) { return e.x; }), mix([](const Vec2& e) { return e.y; })};
}

Vec2 lut_lookup_grad_r(const BrdfLut& lut, double mu, double roughness) {
  const LutCell c = lut_cell(lut, mu, roughness);
  if (c.j0 == c.j1) return {0.0, 0.0};  // clamped at the border
  const double d_dty = lut.resolution;  // d ty / d roughness
  auto grad = [&](auto get) {
    const double row0 = get(lut.at(c.i0, c.j0)) * (1 - c.tx) + get(lut.at(c.i1, c.j0)) * c.tx;
    const double row1 = get(lut.at(c.i0, c.j1)) * (1 - c.tx) + get(lut.at(c.i1, c.j1)) * c.tx;
    return (row1 - row0) * d_dty;
  };
  return {grad([](const Vec2& e) { return e.x; }), grad([](const Vec2& e) { return e.y; })};
}

McEstimate render_equation_mc(const LobeBrdf& brdf, const Vec3& n, const Vec3& v,
                              const CubeMap& env, int n_samples, uint64_t seed) {
  if (n_samples < 16) throw std::invalid_argument("render_equation_mc: n_samples must be >= 16");
  if (dot(n, v) <= 0.0)
    throw std::invalid_argument("render_equation_mc: view must be in the upper hemisphere");

  Vec3 tx, ty;
  build_tangent_frame(n, tx, ty);
  auto to_world = [&](const Vec3& local) { return tx * local.x + ty * local.y + n * local.z; };

  const double alpha = roughness_to_alpha(brdf.roughness);

  Pcg32 rng(seed, 0x9e3779b97f4a7c15ULL);
  Rgb sum{0, 0, 0}, sum_sq{0, 0, 0};

  for (int i = 0; i < n_samples; ++i) {
    const bool use_cosine = rng.next_double() < 0.5;
    const Vec2 u = rng.next_vec2();
    Vec3 l;
    if (use_cosine) {
      l = to_world(sample_cosine_hemisphere(u));
    } else {
      const Vec3 h = to_world(importance_sample_ggx(u, alpha));
      l = h * (2.0 * dot(v, h)) - v;
    }
    const double nl = dot(n, l);
    Rgb contrib{0, 0, 0};
    if (nl > 0.0) {
      const Vec3 h = normalize(v + l);
      const double nh = std::max(dot(n, h), 0.0);
      const double vh = std::max(dot(v, h), 0.0);
      const double pdf_cos = nl / kPi;
      const double pdf_ggx = vh > 1e-12 ? ggx_ndf(brdf.roughness, nh) * nh / (4.0 * vh) : 0.0;
      const double pdf = 0.5 * pdf_cos + 0.5 * pdf_ggx;
      if (pdf > 1e-12) {
        const ShadingGeometry geom{n, v, normalize(l), h};
        contrib = eval_lobe_brdf(brdf, geom) * sample(env, normalize(l)) * (nl / pdf);
      }
    }
    sum += contrib;
    sum_sq += contrib * contrib;
  }

  McEstimate est;
  est.value = sum / double(n_samples);
  const Rgb var = (sum_sq / double(n_samples) - est.value * est.value) / double(n_samples);
  est.std_error = {std::sqrt(std::max(0.0, var.x)), std::sqrt(std::max(0.0, var.y)),
                   std::sqrt(std::max(0.0, var.z))};
  return est;
}

McEstimate render_equation_mc(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                              const CubeMap& env, int n_samples, uint64_t seed) {
  return render_equation_mc(metallic_lobe(mat), n, v, env, n_samples, seed);
}

}  // namespace recap
