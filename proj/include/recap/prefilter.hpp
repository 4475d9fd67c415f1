// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "recap/cubemap.hpp"

namespace recap {

struct SpecularLevel {
  double roughness = 0.0;
  CubeMap map;
};

// Environment lighting prefiltered for shading lookups: cosine-convolved
// irradiance for the diffuse term and a roughness-indexed GGX chain for the
// specular term.
struct PrefilteredEnv {
  CubeMap diffuse;
  std::vector<SpecularLevel> specular;
};

// Cosine-weighted irradiance over the upper hemisphere of each output
// direction, normalized so a constant map stays constant:
//   E_d(n) = sum_l L(l) * max(n.l, 0) * dw(l) / pi
// with dw the exact solid angle of each source texel.
CubeMap prefilter_diffuse(const CubeMap& src, int out_size);

// Adjoint of prefilter_diffuse as a linear map: given dLoss/dE_d, returns
// dLoss/dL on a source map of size src_size. Mirrors the forward weights.
CubeMap diffuse_prefilter_adjoint(const CubeMap& grad_diffuse, int src_size);

// Bilinear resample to a new face size.
CubeMap resample_cube(const CubeMap& src, int out_size);

// One specular level: GGX-importance-sampled average of the source about
// each output texel direction (normal = view = reflection convention).
// Roughness 0 degenerates to a plain resample. Deterministic: Hammersley
// samples with a per-texel hash rotation.
CubeMap prefilter_specular_level(const CubeMap& src, double roughness, int out_size,
                                 int samples_per_texel);

// Full chain. Roughness levels must be strictly increasing and start at 0;
// face sizes must be non-increasing. samples_per_texel < 1 is rejected.
std::vector<SpecularLevel> prefilter_specular(
    const CubeMap& src, const std::vector<std::pair<double, int>>& levels,
    int samples_per_texel);

// Default ladder: 6 levels at roughness {0, .2, .4, .6, .8, 1}, face sizes
// halving from the source size with a floor of 4.
std::vector<std::pair<double, int>> default_specular_levels(int base_size);

// Diffuse + default specular chain. diffuse_size 0 picks min(src size, 32).
PrefilteredEnv build_prefiltered_env(const CubeMap& src, int samples_per_texel = 1024,
                                     int diffuse_size = 0);

// Roughness-interpolated specular lookup. Roughness outside [0,1] is clamped.
Rgb query_specular(const PrefilteredEnv& env, const Vec3& dir, double roughness);

// Lookup decomposed into its bilinear taps, for derivative propagation.
// value = (1-t) * sum(taps_lo) + t * sum(taps_hi); level_hi may equal
// level_lo when the roughness hits a stored level exactly.
struct SpecularQuery {
  int level_lo = 0, level_hi = 0;
  double t = 0.0;
  std::array<CubeTap, 4> taps_lo{}, taps_hi{};
  Rgb value{0, 0, 0};
};
SpecularQuery query_specular_detail(const PrefilteredEnv& env, const Vec3& dir,
                                    double roughness);

}  // namespace recap
