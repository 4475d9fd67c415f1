// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "recap/vec.hpp"

namespace recap {

// Per-point surface attributes. basecolor and specular_tint drive the tint
// shading model; metallic exists for the blend model kept as an ablation.
struct MaterialParams {
  Rgb basecolor{0.5, 0.5, 0.5};
  Rgb specular_tint{0.04, 0.04, 0.04};
  double roughness = 0.5;
  double metallic = 0.0;
};

inline constexpr double kDielectricSpecular = 0.04;

inline MaterialParams clamp_material(const MaterialParams& m) {
  MaterialParams r = m;
  r.basecolor = vclamp(m.basecolor, 0.0, 1.0);
  r.specular_tint = vclamp(m.specular_tint, 0.0, 1.0);
  r.roughness = std::clamp(m.roughness, 0.0, 1.0);
  r.metallic = std::clamp(m.metallic, 0.0, 1.0);
  return r;
}

}  // namespace recap
