// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/prefilter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "recap/parallel.hpp"
#include "recap/rng.hpp"

namespace recap {

namespace {

struct TexelGeometry {
  std::vector<Vec3> dirs;
  std::vector<double> omegas;
};

TexelGeometry texel_geometry(int size) {
  TexelGeometry g;
  const size_t n = static_cast<size_t>(6) * size * size;
  g.dirs.resize(n);
  g.omegas.resize(n);
  size_t i = 0;
  for (int face = 0; face < 6; ++face)
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x, ++i) {
        g.dirs[i] = texel_direction(face, (x + 0.5) / size, (y + 0.5) / size);
        g.omegas[i] = texel_solid_angle(size, x, y);
      }
  return g;
}

// GGX half-vector sample in a z-up tangent frame; alpha is the squared
// roughness of the Disney parameterization.
Vec3 importance_sample_ggx(const Vec2& u, double alpha) {
  const double phi = 2.0 * kPi * u.x;
  const double a2 = alpha * alpha;
  const double cos_theta2 = (1.0 - u.y) / (1.0 + (a2 - 1.0) * u.y);
  const double cos_theta = std::sqrt(cos_theta2);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta2));
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

Vec2 texel_scramble(int face, int x, int y) {
  uint64_t h = 1469598103934665603ULL;
  h = hash_combine(h, static_cast<uint64_t>(face));
  h = hash_combine(h, static_cast<uint64_t>(x));
  h = hash_combine(h, static_cast<uint64_t>(y));
  const double a = double(h & 0xffffffffu) / 4294967296.0;
  const double b = double((h >> 32) & 0xffffffffu) / 4294967296.0;
  return {a, b};
}

}  // namespace

CubeMap prefilter_diffuse(const CubeMap& src, int out_size) {
  if (out_size < 4) throw std::invalid_argument("prefilter_diffuse: out_size must be >= 4");
  const TexelGeometry geo = texel_geometry(src.face_size);
  CubeMap out(out_size);
  const int64_t per_face = static_cast<int64_t>(out_size) * out_size;
  parallel_for(0, 6 * per_face, [&](int64_t idx, int) {
    const int face = static_cast<int>(idx / per_face);
    const int y = static_cast<int>((idx % per_face) / out_size);
    const int x = static_cast<int>(idx % out_size);
    const Vec3 n = texel_direction(face, (x + 0.5) / out_size, (y + 0.5) / out_size);
    Rgb acc{0, 0, 0};
    for (size_t i = 0; i < geo.dirs.size(); ++i) {
      const double cosine = dot(n, geo.dirs[i]);
      if (cosine <= 0.0) continue;
      acc += src.texels[i] * (cosine * geo.omegas[i]);
    }
    out.at(face, x, y) = acc / kPi;
  });
  return out;
}

CubeMap diffuse_prefilter_adjoint(const CubeMap& grad_diffuse, int src_size) {
  const int out_size = grad_diffuse.face_size;
  std::vector<Vec3> out_dirs(static_cast<size_t>(6) * out_size * out_size);
  {
    size_t i = 0;
    for (int face = 0; face < 6; ++face)
      for (int y = 0; y < out_size; ++y)
        for (int x = 0; x < out_size; ++x, ++i)
          out_dirs[i] = texel_direction(face, (x + 0.5) / out_size, (y + 0.5) / out_size);
  }
  CubeMap grad_src(src_size);
  const int64_t per_face = static_cast<int64_t>(src_size) * src_size;
  parallel_for(0, 6 * per_face, [&](int64_t idx, int) {
    const int face = static_cast<int>(idx / per_face);
    const int y = static_cast<int>((idx % per_face) / src_size);
    const int x = static_cast<int>(idx % src_size);
    const Vec3 l = texel_direction(face, (x + 0.5) / src_size, (y + 0.5) / src_size);
    const double omega = texel_solid_angle(src_size, x, y);
    Rgb acc{0, 0, 0};
    for (size_t j = 0; j < out_dirs.size(); ++j) {
      const double cosine = dot(out_dirs[j], l);
      if (cosine <= 0.0) continue;
      acc += grad_diffuse.texels[j] * cosine;
    }
    grad_src.at(face, x, y) = acc * (omega / kPi);
  });
  return grad_src;
}

CubeMap resample_cube(const CubeMap& src, int out_size) {
  CubeMap out(out_size);
  const int64_t per_face = static_cast<int64_t>(out_size) * out_size;
  parallel_for(0, 6 * per_face, [&](int64_t idx, int) {
    const int face = static_cast<int>(idx / per_face);
    const int y = static_cast<int>((idx % per_face) / out_size);
    const int x = static_cast<int>(idx % out_size);
    const Vec3 dir = texel_direction(face, (x + 0.5) / out_size, (y + 0.5) / out_size);
    out.at(face, x, y) = sample(src, dir);
  });
  return out;
}

CubeMap prefilter_specular_level(const CubeMap& src, double roughness, int out_size,
                                 int samples_per_texel) {
  if (samples_per_texel < 1)
    throw std::invalid_argument("prefilter_specular_level: samples_per_texel must be >= 1");
  if (roughness <= 0.0) return resample_cube(src, out_size);

  const double alpha = roughness * roughness;
  CubeMap out(out_size);
  const int64_t per_face = static_cast<int64_t>(out_size) * out_size;
  parallel_for(0, 6 * per_face, [&](int64_t idx, int) {
    const int face = static_cast<int>(idx / per_face);
    const int y = static_cast<int>((idx % per_face) / out_size);
    const int x = static_cast<int>(idx % out_size);
    const Vec3 n = texel_direction(face, (x + 0.5) / out_size, (y + 0.5) / out_size);
    Vec3 tx, ty;
    build_tangent_frame(n, tx, ty);
    const Vec2 scramble = texel_scramble(face, x, y);

    Rgb acc{0, 0, 0};
    double weight = 0.0;
    for (int i = 0; i < samples_per_texel; ++i) {
      const Vec2 u = hammersley(static_cast<uint32_t>(i),
                                static_cast<uint32_t>(samples_per_texel), scramble);
      const Vec3 hl = importance_sample_ggx(u, alpha);
      const Vec3 h = tx * hl.x + ty * hl.y + n * hl.z;
      const Vec3 l = h * (2.0 * dot(n, h)) - n;  // v = n
      const double nl = dot(n, l);
      if (nl <= 0.0) continue;
      acc += sample(src, normalize(l)) * nl;
      weight += nl;
    }
    out.at(face, x, y) = weight > 0.0 ? acc / weight : sample(src, n);
  });
  return out;
}

std::vector<SpecularLevel> prefilter_specular(
    const CubeMap& src, const std::vector<std::pair<double, int>>& levels,
    int samples_per_texel) {
  if (samples_per_texel < 1)
    throw std::invalid_argument("prefilter_specular: samples_per_texel must be >= 1");
  if (levels.empty() || levels.front().first != 0.0)
    throw std::invalid_argument("prefilter_specular: levels must start at roughness 0");
  for (size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].first <= levels[i - 1].first)
      throw std::invalid_argument("prefilter_specular: roughness must be strictly increasing");
    if (levels[i].second > levels[i - 1].second)
      throw std::invalid_argument("prefilter_specular: face sizes must be non-increasing");
  }
  std::vector<SpecularLevel> chain;
  chain.reserve(levels.size());
  for (const auto& [roughness, size] : levels)
    chain.push_back({roughness, prefilter_specular_level(src, roughness, size,
                                                         samples_per_texel)});
  return chain;
}

std::vector<std::pair<double, int>> default_specular_levels(int base_size) {
  std::vector<std::pair<double, int>> levels;
  int size = base_size;
  for (int i = 0; i < 6; ++i) {
    levels.emplace_back(i * 0.2, std::max(4, size));
    size /= 2;
  }
  return levels;
}

PrefilteredEnv build_prefiltered_env(const CubeMap& src, int samples_per_texel,
                                     int diffuse_size) {
  if (diffuse_size <= 0) diffuse_size = std::min(src.face_size, 32);
  PrefilteredEnv env;
  env.diffuse = prefilter_diffuse(src, diffuse_size);
  env.specular =
      prefilter_specular(src, default_specular_levels(src.face_size), samples_per_texel);
  return env;
}

SpecularQuery query_specular_detail(const PrefilteredEnv& env, const Vec3& dir,
                                    double roughness) {
  if (env.specular.empty())
    throw std::invalid_argument("query_specular: empty specular chain");
  const double r = std::clamp(roughness, 0.0, 1.0);

  SpecularQuery q;
  const auto& chain = env.specular;
  // First level at or above r; exact hits bypass interpolation.
  size_t hi = 0;
  while (hi + 1 < chain.size() && chain[hi].roughness < r) ++hi;
  size_t lo;
  if (chain[hi].roughness <= r || hi == 0)
    lo = hi;  // exact match, r below the bottom level, or r above the top level
  else
    lo = hi - 1;

  q.level_lo = static_cast<int>(lo);
  q.level_hi = static_cast<int>(hi);
  q.t = (lo == hi) ? 0.0
                   : (r - chain[lo].roughness) /
                         (chain[hi].roughness - chain[lo].roughness);
  q.taps_lo = sample_taps(chain[lo].map.face_size, dir);
  q.taps_hi = sample_taps(chain[hi].map.face_size, dir);

  Rgb value_lo{0, 0, 0}, value_hi{0, 0, 0};
  for (const CubeTap& tap : q.taps_lo)
    value_lo += chain[lo].map.at(tap.face, tap.x, tap.y) * tap.weight;
  for (const CubeTap& tap : q.taps_hi)
    value_hi += chain[hi].map.at(tap.face, tap.x, tap.y) * tap.weight;
  q.value = lerp(value_lo, value_hi, q.t);
  return q;
}

Rgb query_specular(const PrefilteredEnv& env, const Vec3& dir, double roughness) {
  return query_specular_detail(env, dir, roughness).value;
}

}  // namespace recap
