// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "recap/brdf.hpp"
#include "recap/material.hpp"
#include "recap/prefilter.hpp"

namespace recap {

enum class RangeMode { kUnitBounded, kNonNegative };
enum class Tonemap { kNone, kClip, kReinhard, kAces };

// Post-shading processing choice: how radiance becomes display color, which
// in turn fixes the physical interpretation of the learned environment map
// (LDR for unit-bounded ranges, linear HDR for nonnegative + clip + gamma).
struct PostProcessConfig {
  RangeMode range = RangeMode::kNonNegative;
  Tonemap tonemap = Tonemap::kClip;
  bool gamma = true;
};

PostProcessConfig parse_postprocess_config(const std::string& range,
                                           const std::string& tonemap,
                                           const std::string& gamma);
std::string describe(const PostProcessConfig& cfg);

// Tint shading: L = E_s(refl, r) * (s b1 + b2) + E_d(n) * b.
// n.v is clamped to a 1e-4 floor so the LUT index stays in (0, 1].
Rgb shade_proposed(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                   const PrefilteredEnv& env, const BrdfLut& lut);

// Metallic-blend shading kept for the ablation:
// L = E_d(n) (1-m) b + E_s(refl, r) * (F0 b1 + b2), F0 = m b + (1-m) 0.04.
Rgb shade_metallic_blend(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                         const PrefilteredEnv& env, const BrdfLut& lut);

// Tint shading with everything the backward pass needs.
struct ShadeDetail {
  Rgb color{0, 0, 0};
  double mu = 0.0;          // clamped n.v
  Vec3 reflection{0, 0, 0};
  Rgb e_spec{0, 0, 0}, e_diff{0, 0, 0};
  double beta1 = 0.0, beta2 = 0.0;
  double dbeta1_dr = 0.0, dbeta2_dr = 0.0;
  Rgb de_spec_dr{0, 0, 0};
  SpecularQuery spec_query;
  std::array<CubeTap, 4> diff_taps{};
};

ShadeDetail shade_proposed_detail(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                                  const PrefilteredEnv& env, const BrdfLut& lut);

// Gradients of the tint shading output against its inputs, contracted with an
// incoming dLoss/dColor. Environment gradients are expressed as taps into the
// prefiltered maps (diffuse map and the two touched specular levels).
struct ShadeGrad {
  Rgb d_basecolor{0, 0, 0};
  Rgb d_tint{0, 0, 0};
  double d_roughness = 0.0;
};

ShadeGrad shade_proposed_backward(const ShadeDetail& detail, const MaterialParams& mat,
                                  const Rgb& d_color);

// Per-channel display mapping: tonemap then optional 1/2.2 gamma, final
// clamp to [0, 1]. Monotone non-decreasing in every configuration. Negative
// input throws.
Rgb postprocess(const Rgb& linear, const PostProcessConfig& cfg);

// d postprocess / d linear, per channel (the gamma slope is floored near
// zero so chains through black pixels stay finite).
Rgb postprocess_derivative(const Rgb& linear, const PostProcessConfig& cfg);

// For relighting, an input HDR map is adapted to the interpretation the
// config trained under: unit-bounded configs clip to [0,1] (LDR), the
// nonnegative configs take the map as-is.
CubeMap preprocess_hdr_for_config(const CubeMap& map, const PostProcessConfig& cfg);

// Saturation penalty on the specular tint: lambda * ||s - mean(s)||.
double loss_sat(const Rgb& tint, double lambda_sat);
Rgb loss_sat_grad(const Rgb& tint, double lambda_sat);

// Energy conservation as a squared hinge: lambda * max(0, ||s||+||b||-1)^2.
double loss_energy(const Rgb& tint, const Rgb& basecolor, double lambda_ec);
void loss_energy_grad(const Rgb& tint, const Rgb& basecolor, double lambda_ec,
                      Rgb& d_tint, Rgb& d_basecolor);

}  // namespace recap
