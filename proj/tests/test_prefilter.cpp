// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "recap/fixture.hpp"
#include "recap/prefilter.hpp"
#include "recap/rng.hpp"

using namespace recap;

namespace {

CubeMap random_map(int size, uint64_t seed, double scale = 1.0) {
  CubeMap map(size);
  Pcg32 rng(seed);
  for (Rgb& t : map.texels)
    t = {scale * rng.next_double(), scale * rng.next_double(), scale * rng.next_double()};
  return map;
}

double max_rel_diff(const CubeMap& a, const CubeMap& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.texels.size(); ++i)
    for (int c = 0; c < 3; ++c) {
      const double denom = std::max(1e-12, std::fabs(a.texels[i][c]));
      worst = std::max(worst, std::fabs(a.texels[i][c] - b.texels[i][c]) / denom);
    }
  return worst;
}

// Brute-force irradiance: the source interpreted bilinearly and integrated on
// a 4x refined grid with exact solid angles. Independent of prefilter_diffuse.
Rgb irradiance_quadrature(const CubeMap& src, const Vec3& n, int oversample) {
  const int fine = src.face_size * oversample;
  Rgb acc{0, 0, 0};
  for (int face = 0; face < 6; ++face)
    for (int y = 0; y < fine; ++y)
      for (int x = 0; x < fine; ++x) {
        const Vec3 l = texel_direction(face, (x + 0.5) / fine, (y + 0.5) / fine);
        const double cosine = dot(n, l);
        if (cosine <= 0.0) continue;
        acc += sample(src, l) * (cosine * texel_solid_angle(fine, x, y));
      }
  return acc / kPi;
}

}  // namespace

TEST_CASE("diffuse prefilter of a constant map is that constant") {
  const CubeMap src(16, {0.3, 1.1, 0.02});
  const CubeMap out = prefilter_diffuse(src, 8);
  for (const Rgb& t : out.texels) {
    CHECK(t.x == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(t.y == doctest::Approx(1.1).epsilon(1e-3));
    CHECK(t.z == doctest::Approx(0.02).epsilon(1e-3));
  }
}

TEST_CASE("diffuse prefilter of a black map is black") {
  const CubeMap out = prefilter_diffuse(CubeMap(16), 8);
  for (const Rgb& t : out.texels) CHECK(length(t) == 0.0);
}

TEST_CASE("cosine-lobe source integrates to the closed form 2/3") {
  // L(l) = max(n0 . l, 0) with n0 = +z; E_d(n0) = int cos^2 / pi = 2/3.
  const Vec3 n0{0, 0, 1};
  const int size = 32;
  CubeMap src(size);
  for (int face = 0; face < 6; ++face)
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) {
        const double c =
            std::max(0.0, dot(n0, texel_direction(face, (x + 0.5) / size, (y + 0.5) / size)));
        src.at(face, x, y) = {c, c, c};
      }

  // Odd output size so the +z face has a texel exactly on the axis.
  const CubeMap out = prefilter_diffuse(src, 15);
  const double got = out.at(kFacePosZ, 7, 7).x;
  CHECK(got == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

  // Cross-check against the brute-force quadrature oracle.
  const double oracle = irradiance_quadrature(src, n0, 2).x;
  CHECK(oracle == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("diffuse prefilter matches 4x brute-force quadrature on a smooth map") {
  const CubeMap src = bake_env(env_sky_gradient(), 32);
  const CubeMap out = prefilter_diffuse(src, 16);
  double worst = 0.0;
  for (int face = 0; face < 6; ++face)
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x) {
        const Vec3 n = texel_direction(face, (x + 0.5) / 16, (y + 0.5) / 16);
        const Rgb ref = irradiance_quadrature(src, n, 4);
        const Rgb got = out.at(face, x, y);
        for (int c = 0; c < 3; ++c)
          worst = std::max(worst, std::fabs(got[c] - ref[c]) / std::fabs(ref[c]));
      }
  CHECK(worst < 1e-3);
}

TEST_CASE("diffuse prefilter is linear in the source") {
  const CubeMap m1 = random_map(8, 21);
  const CubeMap m2 = random_map(8, 22);
  const double a = 0.7, b = 2.5;
  CubeMap mix(8);
  for (size_t i = 0; i < mix.texels.size(); ++i)
    mix.texels[i] = m1.texels[i] * a + m2.texels[i] * b;

  const CubeMap p1 = prefilter_diffuse(m1, 8);
  const CubeMap p2 = prefilter_diffuse(m2, 8);
  const CubeMap pmix = prefilter_diffuse(mix, 8);
  for (size_t i = 0; i < pmix.texels.size(); ++i) {
    const Rgb want = p1.texels[i] * a + p2.texels[i] * b;
    CHECK(length(pmix.texels[i] - want) < 1e-6);
  }
}

TEST_CASE("specular prefilter is linear in the source under fixed seeds") {
  const CubeMap m1 = random_map(8, 31);
  const CubeMap m2 = random_map(8, 32);
  const double a = 1.3, b = 0.4;
  CubeMap mix(8);
  for (size_t i = 0; i < mix.texels.size(); ++i)
    mix.texels[i] = m1.texels[i] * a + m2.texels[i] * b;

  const CubeMap p1 = prefilter_specular_level(m1, 0.5, 8, 64);
  const CubeMap p2 = prefilter_specular_level(m2, 0.5, 8, 64);
  const CubeMap pmix = prefilter_specular_level(mix, 0.5, 8, 64);
  for (size_t i = 0; i < pmix.texels.size(); ++i) {
    const Rgb want = p1.texels[i] * a + p2.texels[i] * b;
    CHECK(length(pmix.texels[i] - want) < 1e-9 * (1.0 + length(want)));
  }
}

TEST_CASE("diffuse prefilter commutes with 90-degree face rotations") {
  const CubeMap src = random_map(16, 77);

  // Rotate by 90 degrees about +y: texel grids map onto texel grids exactly.
  const Mat3 rot = rotation_matrix(axis_angle({0, 1, 0}, kPi / 2));
  auto rotate_map = [&](const CubeMap& m) {
    CubeMap out(m.face_size);
    const int s = m.face_size;
    for (int face = 0; face < 6; ++face)
      for (int y = 0; y < s; ++y)
        for (int x = 0; x < s; ++x) {
          const Vec3 d = rot * texel_direction(face, (x + 0.5) / s, (y + 0.5) / s);
          const FaceUv fuv = direction_to_texel(normalize(d));
          const int xi = static_cast<int>(std::floor(fuv.u * s));
          const int yi = static_cast<int>(std::floor(fuv.v * s));
          out.at(fuv.face, xi, yi) = m.at(face, x, y);
        }
    return out;
  };

  const CubeMap pre_then_rotate = rotate_map(prefilter_diffuse(src, 16));
  const CubeMap rotate_then_pre = prefilter_diffuse(rotate_map(src), 16);
  CHECK(max_rel_diff(pre_then_rotate, rotate_then_pre) < 1e-11);
}

TEST_CASE("specular prefilter keeps constants constant at every roughness") {
  const CubeMap src(16, {0.4, 1.7, 0.9});
  const auto chain = prefilter_specular(src, default_specular_levels(16), 32);
  REQUIRE(chain.size() == 6);
  for (const SpecularLevel& level : chain)
    for (const Rgb& t : level.map.texels) {
      CHECK(t.x == doctest::Approx(0.4).epsilon(1e-12));
      CHECK(t.y == doctest::Approx(1.7).epsilon(1e-12));
      CHECK(t.z == doctest::Approx(0.9).epsilon(1e-12));
    }
}

TEST_CASE("roughness-0 level resamples the source") {
  const CubeMap src = random_map(16, 5);
  const CubeMap level0 = prefilter_specular_level(src, 0.0, 16, 8);
  CHECK(max_rel_diff(src, level0) < 1e-9);
}

TEST_CASE("single bright texel at roughness 0.5: energy preserved, matches quadrature") {
  const int size = 16;
  CubeMap src(size);
  src.at(kFacePosZ, 8, 8) = {50, 50, 50};

  const double roughness = 0.5;
  const CubeMap level = prefilter_specular_level(src, roughness, size, 1024);

  // Solid-angle-weighted energy is preserved within 5%.
  auto energy = [size](const CubeMap& m) {
    double e = 0.0;
    size_t i = 0;
    for (int face = 0; face < 6; ++face)
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x, ++i)
          e += mean(m.texels[i]) * texel_solid_angle(size, x, y);
    return e;
  };
  CHECK(energy(level) == doctest::Approx(energy(src)).epsilon(0.05));

  // Dense GGX quadrature oracle: same kernel, summed over all source texels.
  const double alpha = roughness * roughness;
  auto oracle = [&](const Vec3& n) {
    double num = 0.0, den = 0.0;
    for (int face = 0; face < 6; ++face)
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
          const Vec3 l = texel_direction(face, (x + 0.5) / size, (y + 0.5) / size);
          const double nl = dot(n, l);
          if (nl <= 0.0) continue;
          const Vec3 h = normalize(n + l);
          const double nh = dot(n, h);
          const double d = nh * nh * (alpha * alpha - 1.0) + 1.0;
          const double ggx = alpha * alpha / (kPi * d * d);
          // pdf of l when sampling h from D(h) nh around v = n.
          const double pdf = ggx * nh / (4.0 * std::max(1e-9, dot(n, h)));
          const double w = pdf * nl * texel_solid_angle(size, x, y);
          num += mean(sample(src, l)) * w;
          den += w;
        }
    return num / den;
  };
  // Compare at a handful of directions around the bright texel.
  for (int dx : {-2, 0, 3}) {
    const Vec3 n = texel_direction(kFacePosZ, (8 + dx + 0.5) / size, (8 + 0.5) / size);
    const double got = mean(sample(level, n));
    const double want = oracle(n);
    CHECK(got == doctest::Approx(want).epsilon(0.1));
  }
}

TEST_CASE("specular chain validation") {
  const CubeMap src(8, {1, 1, 1});
  CHECK_THROWS_AS(prefilter_specular(src, {{0.1, 8}, {0.5, 8}}, 16), std::invalid_argument);
  CHECK_THROWS_AS(prefilter_specular(src, {{0.0, 8}, {0.0, 8}}, 16), std::invalid_argument);
  CHECK_THROWS_AS(prefilter_specular(src, {{0.0, 8}, {0.5, 16}}, 16), std::invalid_argument);
  CHECK_THROWS_AS(prefilter_specular(src, {{0.0, 8}, {0.5, 4}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(prefilter_specular_level(src, 0.3, 8, 0), std::invalid_argument);
}

TEST_CASE("default ladder: 6 levels, halving sizes with a floor of 4") {
  const auto levels = default_specular_levels(32);
  REQUIRE(levels.size() == 6);
  CHECK(levels[0] == std::pair<double, int>{0.0, 32});
  CHECK(levels[1] == std::pair<double, int>{0.2, 16});
  CHECK(levels[2] == std::pair<double, int>{0.4, 8});
  CHECK(levels[3] == std::pair<double, int>{0.6, 4});
  CHECK(levels[4] == std::pair<double, int>{0.8, 4});
  CHECK(levels[5] == std::pair<double, int>{1.0, 4});
}

TEST_CASE("query_specular: exact level match bypasses interpolation") {
  PrefilteredEnv env;
  env.diffuse = CubeMap(4, {0, 0, 0});
  env.specular.push_back({0.0, CubeMap(8, {1, 1, 1})});
  env.specular.push_back({0.5, CubeMap(8, {2, 2, 2})});
  env.specular.push_back({1.0, CubeMap(8, {4, 4, 4})});

  const Vec3 dir{0, 0, 1};
  CHECK(query_specular(env, dir, 0.5).x == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(query_specular(env, dir, 0.0).x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(query_specular(env, dir, 1.0).x == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("query_specular interpolates halfway between constant levels") {
  PrefilteredEnv env;
  env.specular.push_back({0.0, CubeMap(8, {1, 1, 1})});
  env.specular.push_back({0.5, CubeMap(8, {3, 3, 3})});
  CHECK(query_specular(env, {0, 1, 0}, 0.25).x == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("query_specular clamps roughness and stays within level bounds") {
  PrefilteredEnv env;
  for (int i = 0; i < 6; ++i)
    env.specular.push_back({i * 0.2, CubeMap(8, {double(i), double(i), double(i)})});

  Pcg32 rng(9);
  for (int i = 0; i < 300; ++i) {
    const double r = -0.5 + 2.0 * rng.next_double();  // includes out-of-range values
    Vec3 d{rng.next_double() - 0.5, rng.next_double() - 0.5, rng.next_double() - 0.5};
    if (length(d) < 1e-3) continue;
    const double v = query_specular(env, normalize(d), r).x;
    const double rc = std::clamp(r, 0.0, 1.0);
    // Monotone chain: the query must land between the bracketing level values.
    const double lo = std::floor(rc / 0.2), hi = std::ceil(rc / 0.2);
    CHECK(v >= lo - 1e-12);
    CHECK(v <= hi + 1e-12);
  }
}

TEST_CASE("constant source yields a fully constant prefiltered environment") {
  const PrefilteredEnv env = build_prefiltered_env(CubeMap(16, {0.8, 0.8, 0.8}), 32);
  for (const Rgb& t : env.diffuse.texels)
    CHECK(t.x == doctest::Approx(0.8).epsilon(1e-3));
  for (const SpecularLevel& level : env.specular)
    for (const Rgb& t : level.map.texels) CHECK(t.x == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("diffuse prefilter adjoint agrees with the forward map") {
  // <P x, y> == <x, P^T y> for random x, y.
  const int src_size = 8, out_size = 8;
  const CubeMap x = random_map(src_size, 41);
  const CubeMap y = random_map(out_size, 42);
  const CubeMap px = prefilter_diffuse(x, out_size);
  const CubeMap pty = diffuse_prefilter_adjoint(y, src_size);
  double lhs = 0.0, rhs = 0.0;
  for (size_t i = 0; i < px.texels.size(); ++i) lhs += dot(px.texels[i], y.texels[i]);
  for (size_t i = 0; i < x.texels.size(); ++i) rhs += dot(x.texels[i], pty.texels[i]);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}
