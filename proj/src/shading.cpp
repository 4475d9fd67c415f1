// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/shading.hpp"

#include <cmath>
#include <stdexcept>

namespace recap {

namespace {
constexpr double kMuFloor = 1e-4;
constexpr double kGamma = 2.2;
}  // namespace

PostProcessConfig parse_postprocess_config(const std::string& range,
                                           const std::string& tonemap,
                                           const std::string& gamma) {
  PostProcessConfig cfg;
  if (range == "unit") cfg.range = RangeMode::kUnitBounded;
  else if (range == "nonneg") cfg.range = RangeMode::kNonNegative;
  else throw std::invalid_argument("range must be 'unit' or 'nonneg', got '" + range + "'");

  if (tonemap == "none") cfg.tonemap = Tonemap::kNone;
  else if (tonemap == "clip") cfg.tonemap = Tonemap::kClip;
  else if (tonemap == "reinhard") cfg.tonemap = Tonemap::kReinhard;
  else if (tonemap == "aces") cfg.tonemap = Tonemap::kAces;
  else throw std::invalid_argument("tonemap must be none|clip|reinhard|aces, got '" + tonemap + "'");

  if (gamma == "on") cfg.gamma = true;
  else if (gamma == "off") cfg.gamma = false;
  else throw std::invalid_argument("gamma must be 'on' or 'off', got '" + gamma + "'");
  return cfg;
}

std::string describe(const PostProcessConfig& cfg) {
  std::string s = cfg.range == RangeMode::kUnitBounded ? "unit" : "nonneg";
  s += '+';
  switch (cfg.tonemap) {
    case Tonemap::kNone: s += "none"; break;
    case Tonemap::kClip: s += "clip"; break;
    case Tonemap::kReinhard: s += "reinhard"; break;
    case Tonemap::kAces: s += "aces"; break;
  }
  s += cfg.gamma ? "+gamma" : "+nogamma";
  return s;
}

ShadeDetail shade_proposed_detail(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                                  const PrefilteredEnv& env, const BrdfLut& lut) {
  ShadeDetail d;
  d.mu = std::max(dot(n, v), kMuFloor);
  d.reflection = normalize(reflect_about(v, n));
  d.spec_query = query_specular_detail(env, d.reflection, mat.roughness);
  d.e_spec = d.spec_query.value;
  d.diff_taps = sample_taps(env.diffuse.face_size, n);
  d.e_diff = {0, 0, 0};
  for (const CubeTap& tap : d.diff_taps)
    d.e_diff += env.diffuse.at(tap.face, tap.x, tap.y) * tap.weight;

  const Vec2 betas = lut_lookup(lut, d.mu, mat.roughness);
  d.beta1 = betas.x;
  d.beta2 = betas.y;
  const Vec2 dbetas = lut_lookup_grad_r(lut, d.mu, mat.roughness);
  d.dbeta1_dr = dbetas.x;
  d.dbeta2_dr = dbetas.y;

  // d E_s / d roughness through the level interpolation (piecewise linear).
  const auto& chain = env.specular;
  if (d.spec_query.level_lo != d.spec_query.level_hi) {
    Rgb value_lo{0, 0, 0}, value_hi{0, 0, 0};
    for (const CubeTap& tap : d.spec_query.taps_lo)
      value_lo += chain[d.spec_query.level_lo].map.at(tap.face, tap.x, tap.y) * tap.weight;
    for (const CubeTap& tap : d.spec_query.taps_hi)
      value_hi += chain[d.spec_query.level_hi].map.at(tap.face, tap.x, tap.y) * tap.weight;
    const double dr = chain[d.spec_query.level_hi].roughness -
                      chain[d.spec_query.level_lo].roughness;
    d.de_spec_dr = (value_hi - value_lo) / dr;
  }

  d.color = d.e_spec * (mat.specular_tint * d.beta1 + Rgb{d.beta2, d.beta2, d.beta2}) +
            d.e_diff * mat.basecolor;
  return d;
}

Rgb shade_proposed(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                   const PrefilteredEnv& env, const BrdfLut& lut) {
  return shade_proposed_detail(mat, n, v, env, lut).color;
}

Rgb shade_metallic_blend(const MaterialParams& mat, const Vec3& n, const Vec3& v,
                         const PrefilteredEnv& env, const BrdfLut& lut) {
  const double mu = std::max(dot(n, v), kMuFloor);
  const Vec3 refl = normalize(reflect_about(v, n));
  const Rgb e_spec = query_specular(env, refl, mat.roughness);
  const Rgb e_diff = sample(env.diffuse, n);
  const Vec2 betas = lut_lookup(lut, mu, mat.roughness);
  const Rgb f0 = mat.basecolor * mat.metallic +
                 Rgb{kDielectricSpecular, kDielectricSpecular, kDielectricSpecular} *
                     (1.0 - mat.metallic);
  return e_diff * mat.basecolor * (1.0 - mat.metallic) +
         e_spec * (f0 * betas.x + Rgb{betas.y, betas.y, betas.y});
}

ShadeGrad shade_proposed_backward(const ShadeDetail& d, const MaterialParams& mat,
                                  const Rgb& d_color) {
  ShadeGrad g;
  g.d_basecolor = d_color * d.e_diff;
  g.d_tint = d_color * d.e_spec * d.beta1;
  const Rgb spec_coeff = mat.specular_tint * d.beta1 + Rgb{d.beta2, d.beta2, d.beta2};
  const Rgb dr_term = d.de_spec_dr * spec_coeff +
                      d.e_spec * (mat.specular_tint * d.dbeta1_dr +
                                  Rgb{d.dbeta2_dr, d.dbeta2_dr, d.dbeta2_dr});
  g.d_roughness = dot(d_color, dr_term);
  return g;
}

namespace {

double tonemap_value(double x, Tonemap tm) {
  switch (tm) {
    case Tonemap::kNone: return x;
    case Tonemap::kClip: return std::min(x, 1.0);
    case Tonemap::kReinhard: return x / (1.0 + x);
    case Tonemap::kAces: {
      // Common 5-coefficient rational fit.
      const double a = 2.51, b = 0.03, c = 2.43, dd = 0.59, e = 0.14;
      return std::clamp(x * (a * x + b) / (x * (c * x + dd) + e), 0.0, 1.0);
    }
  }
  return x;
}

double tonemap_slope(double x, Tonemap tm) {
  switch (tm) {
    case Tonemap::kNone: return 1.0;
    case Tonemap::kClip: return x < 1.0 ? 1.0 : 0.0;
    case Tonemap::kReinhard: {
      const double d = 1.0 + x;
      return 1.0 / (d * d);
    }
    case Tonemap::kAces: {
      const double a = 2.51, b = 0.03, c = 2.43, dd = 0.59, e = 0.14;
      const double num = x * (a * x + b);
      const double den = x * (c * x + dd) + e;
      const double val = num / den;
      if (val <= 0.0 || val >= 1.0) return 0.0;
      return ((2 * a * x + b) * den - num * (2 * c * x + dd)) / (den * den);
    }
  }
  return 1.0;
}

}  // namespace

Rgb postprocess(const Rgb& linear, const PostProcessConfig& cfg) {
  if (linear.x < 0 || linear.y < 0 || linear.z < 0)
    throw std::invalid_argument("postprocess: negative radiance");
  Rgb out;
  for (int c = 0; c < 3; ++c) {
    double x = tonemap_value(linear[c], cfg.tonemap);
    if (cfg.gamma) x = std::pow(x, 1.0 / kGamma);
    out[c] = std::clamp(x, 0.0, 1.0);
  }
  return out;
}

Rgb postprocess_derivative(const Rgb& linear, const PostProcessConfig& cfg) {
  Rgb out;
  for (int c = 0; c < 3; ++c) {
    const double t = tonemap_value(linear[c], cfg.tonemap);
    double slope = tonemap_slope(linear[c], cfg.tonemap);
    if (cfg.gamma)
      slope *= (1.0 / kGamma) * std::pow(std::max(t, 1e-6), 1.0 / kGamma - 1.0);
    if (t >= 1.0 && cfg.tonemap == Tonemap::kNone) slope = 0.0;  // final clamp
    out[c] = slope;
  }
  return out;
}

CubeMap preprocess_hdr_for_config(const CubeMap& map, const PostProcessConfig& cfg) {
  if (cfg.range == RangeMode::kNonNegative) return map;
  CubeMap out = map;
  for (Rgb& t : out.texels) t = vclamp(t, 0.0, 1.0);
  return out;
}

double loss_sat(const Rgb& tint, double lambda_sat) {
  const double m = mean(tint);
  const Rgb d = tint - Rgb{m, m, m};
  return lambda_sat * length(d);
}

Rgb loss_sat_grad(const Rgb& tint, double lambda_sat) {
  const double m = mean(tint);
  const Rgb d = tint - Rgb{m, m, m};
  const double norm = length(d);
  if (norm < 1e-12) return {0, 0, 0};
  return d * (lambda_sat / norm);
}

double loss_energy(const Rgb& tint, const Rgb& basecolor, double lambda_ec) {
  const double h = length(tint) + length(basecolor) - 1.0;
  return h > 0.0 ? lambda_ec * h * h : 0.0;
}

void loss_energy_grad(const Rgb& tint, const Rgb& basecolor, double lambda_ec,
                      Rgb& d_tint, Rgb& d_basecolor) {
  d_tint = {0, 0, 0};
  d_basecolor = {0, 0, 0};
  const double ns = length(tint), nb = length(basecolor);
  const double h = ns + nb - 1.0;
  if (h <= 0.0) return;
  const double coef = 2.0 * lambda_ec * h;
  if (ns > 1e-12) d_tint = tint * (coef / ns);
  if (nb > 1e-12) d_basecolor = basecolor * (coef / nb);
}

}  // namespace recap
