// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "recap/cubemap.hpp"
#include "recap/material.hpp"
#include "recap/vec.hpp"

namespace recap {

// Roughness-to-alpha uses the Disney squaring; alpha is floored so the
// distribution stays finite at r = 0 (mirror behavior is carried by specular
// level 0 instead).
inline constexpr double kMinAlpha = 1e-4;

inline double roughness_to_alpha(double r) { return std::max(r * r, kMinAlpha); }

// Trowbridge-Reitz normal distribution, alpha = r^2.
double ggx_ndf(double roughness, double n_dot_h);

// Separable Schlick-GGX visibility with k = alpha/2 (image-based lighting fit).
double smith_g(double roughness, double n_dot_l, double n_dot_v);

Rgb fresnel_schlick(const Rgb& f0, double v_dot_h);

struct ShadingGeometry {
  Vec3 n, v, l, h;
};

// Builds the half vector; inputs must be unit length.
ShadingGeometry make_geometry(const Vec3& n, const Vec3& v, const Vec3& l);

// A single-lobe microfacet BRDF description. The shading models are split-sum
// approximations of instances of this: the metallic blend uses
// diffuse = (1-m) b, f0 = m b + (1-m) 0.04; the tint model uses diffuse = b,
// f0 = s.
struct LobeBrdf {
  Rgb diffuse{0, 0, 0};
  Rgb f0{0, 0, 0};
  double roughness = 0.5;
  bool enable_diffuse = true;
  bool enable_specular = true;
};

Rgb eval_lobe_brdf(const LobeBrdf& brdf, const ShadingGeometry& geom);

LobeBrdf metallic_lobe(const MaterialParams& mat);
LobeBrdf tint_lobe(const MaterialParams& mat);

// Metallic-blend BRDF of the ablation shading model: lambert diffuse scaled
// by (1-m) plus Cook-Torrance specular with F0 = m b + (1-m) 0.04. Returns
// zero outside the upper hemisphere.
Rgb eval_brdf(const MaterialParams& mat, const ShadingGeometry& geom);

// Split-sum environment BRDF table: entry (mu = n.v, roughness) holds the F0
// coefficient (beta1) and constant term (beta2) of the prefiltered specular
// integral, sampled at cell centers.
struct BrdfLut {
  int resolution = 0;
  uint32_t seed = 0;
  std::vector<Vec2> table;  // x = beta1, y = beta2; index = row r * resolution + col mu

  Vec2& at(int mu_idx, int r_idx) { return table[static_cast<size_t>(r_idx) * resolution + mu_idx]; }
  const Vec2& at(int mu_idx, int r_idx) const {
    return table[static_cast<size_t>(r_idx) * resolution + mu_idx];
  }
};

// GGX-importance-sampled LUT; deterministic for a fixed seed.
// resolution >= 16, samples >= 256.
BrdfLut integrate_brdf_lut(int resolution, int samples, uint32_t seed = 0);

// Bilinear lookup, clamped at the table border. mu is clamped to (0, 1].
Vec2 lut_lookup(const BrdfLut& lut, double mu, double roughness);

// Partial derivatives of the bilinear lookup with respect to roughness
// (piecewise constant between rows).
Vec2 lut_lookup_grad_r(const BrdfLut& lut, double mu, double roughness);

// Monte-Carlo estimate of the rendering equation for one surface point under
// a cube-map environment: a 50/50 mixture of cosine and GGX half-vector
// importance sampling combined through the mixture (balance-heuristic) pdf.
// This is the ground-truth oracle the split-sum shading is tested against.
struct McEstimate {
  Rgb value{0, 0, 0};
  Rgb std_error{0, 0, 0};
};

McEstimate render_equation_mc(const LobeBrdf& brdf, const Vec3& n, const Vec3& v,
                              const CubeMap& env, int n_samples, uint64_t seed);

McEstimate render_equation_mc(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                              const CubeMap& env, int n_samples, uint64_t seed);

}  // namespace recap
