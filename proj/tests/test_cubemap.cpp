// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "recap/cubemap.hpp"
#include "recap/rng.hpp"

using namespace recap;

namespace {

Vec3 grid_direction(int face, int size, double x, double y) {
  return texel_direction(face, (x + 0.5) / size, (y + 0.5) / size);
}

}  // namespace

TEST_CASE("texel_direction hits the face axes at face centers") {
  CHECK(length(texel_direction(kFacePosY, 0.5, 0.5) - Vec3{0, 1, 0}) < 1e-12);
  CHECK(length(texel_direction(kFacePosX, 0.5, 0.5) - Vec3{1, 0, 0}) < 1e-12);
  CHECK(length(texel_direction(kFaceNegX, 0.5, 0.5) - Vec3{-1, 0, 0}) < 1e-12);
  CHECK(length(texel_direction(kFaceNegY, 0.5, 0.5) - Vec3{0, -1, 0}) < 1e-12);
  CHECK(length(texel_direction(kFacePosZ, 0.5, 0.5) - Vec3{0, 0, 1}) < 1e-12);
  CHECK(length(texel_direction(kFaceNegZ, 0.5, 0.5) - Vec3{0, 0, -1}) < 1e-12);
}

TEST_CASE("texel_direction returns unit vectors") {
  Pcg32 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const int face = rng.next_u32() % 6;
    const Vec3 d = texel_direction(face, rng.next_double(), rng.next_double());
    CHECK(std::fabs(length(d) - 1.0) < 1e-12);
  }
}

TEST_CASE("direction_to_texel round-trips a 16x16 grid on every face") {
  const int size = 16;
  for (int face = 0; face < 6; ++face)
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) {
        const Vec3 d = grid_direction(face, size, x, y);
        const FaceUv fuv = direction_to_texel(d);
        REQUIRE(fuv.face == face);
        CHECK(std::fabs(fuv.u * size - (x + 0.5)) < 0.5);  // within half a texel
        CHECK(std::fabs(fuv.v * size - (y + 0.5)) < 0.5);
        CHECK(std::fabs(fuv.u * size - (x + 0.5)) < 1e-9);  // in fact exact
        CHECK(std::fabs(fuv.v * size - (y + 0.5)) < 1e-9);
      }
}

TEST_CASE("sampling a constant map returns the constant in any direction") {
  const CubeMap map(8, {0.25, 0.5, 2.0});
  Pcg32 rng(3);
  for (int i = 0; i < 200; ++i) {
    Vec3 d{rng.next_double() - 0.5, rng.next_double() - 0.5, rng.next_double() - 0.5};
    if (length(d) < 1e-3) continue;
    const Rgb c = sample(map, normalize(d));
    CHECK(c.x == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(c.y == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.z == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("sampling at a texel center returns that texel") {
  CubeMap map(8);
  Pcg32 rng(11);
  for (Rgb& t : map.texels) t = {rng.next_double(), rng.next_double(), rng.next_double()};
  for (int face = 0; face < 6; ++face) {
    const Rgb got = sample(map, grid_direction(face, 8, 3, 5));
    const Rgb want = map.at(face, 3, 5);
    CHECK(length(got - want) < 1e-12);
  }
}

TEST_CASE("single-hot texel sampling reproduces analytic bilinear weights") {
  const int size = 16;
  CubeMap map(size);
  map.at(kFacePosZ, 6, 9) = {1, 1, 1};

  // Sample at fractional offsets between texels (6,9) and (7,10).
  for (double tx : {0.0, 0.25, 0.75}) {
    for (double ty : {0.0, 0.5, 0.9}) {
      const Vec3 d = grid_direction(kFacePosZ, size, 6 + tx, 9 + ty);
      const double got = sample(map, d).x;
      const double want = (1 - tx) * (1 - ty);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }

  // Weights of the four taps sum to one regardless of the offset.
  const Vec3 d = grid_direction(kFacePosZ, size, 6.37, 9.81);
  double wsum = 0.0;
  for (const CubeTap& tap : sample_taps(size, d)) wsum += tap.weight;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample rejects non-unit directions") {
  const CubeMap map(4, {1, 1, 1});
  CHECK_THROWS_AS(sample(map, Vec3{0.5, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample(map, Vec3{1.001, 0, 0}), std::invalid_argument);
}

TEST_CASE("texel solid angles partition the sphere") {
  for (int size : {8, 16, 32}) {
    double total = 0.0;
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) total += texel_solid_angle(size, x, y);
    total *= 6.0;
    CHECK(total == doctest::Approx(4.0 * kPi).epsilon(1e-3));
    CHECK(total == doctest::Approx(4.0 * kPi).epsilon(1e-12));  // exact formula
  }
}

TEST_CASE("constant lat-long converts to a constant cube map") {
  const LatLongImage img(32, 16, {0.7, 0.1, 0.4});
  const CubeMap cube = latlong_to_cube(img, 8);
  for (const Rgb& t : cube.texels) {
    CHECK(t.x == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(t.y == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(t.z == doctest::Approx(0.4).epsilon(1e-12));
  }
}

TEST_CASE("lat-long convention: row 0 is the +y pole, phi runs +x toward +z") {
  const LatLongImage img(64, 32);
  // Top row points near +y.
  CHECK(latlong_texel_direction(img, 10, 0).y > 0.99);
  // First column at the equator row points near +x; a quarter turn later +z.
  const Vec3 eq = latlong_texel_direction(img, 0, 16);
  CHECK(eq.x > 0.98);
  const Vec3 quarter = latlong_texel_direction(img, 16, 16);
  CHECK(quarter.z > 0.98);
}

TEST_CASE("lat-long to cube round trip at 4x oversampling stays within 2%") {
  // Smooth low-frequency radiance field.
  auto field = [](const Vec3& d) {
    return Rgb{1.5 + d.x + 0.4 * d.y, 1.2 - 0.5 * d.z + 0.2 * d.x, 1.0 + 0.3 * d.y};
  };
  const int h = 32;
  LatLongImage src(2 * h, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < 2 * h; ++x) src.at(x, y) = field(latlong_texel_direction(src, x, y));

  const CubeMap cube = latlong_to_cube(src, 4 * h);
  const LatLongImage back = cube_to_latlong(cube, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < 2 * h; ++x)
      for (int c = 0; c < 3; ++c) {
        const double a = src.at(x, y)[c], b = back.at(x, y)[c];
        CHECK(std::fabs(a - b) / std::fabs(a) < 0.02);
      }
}

TEST_CASE("a bright texel at the +x equator lands at the +x cube face center") {
  const int h = 16;
  LatLongImage img(2 * h, h);
  img.at(0, h / 2) = {100, 100, 100};  // nearest texel to the +x direction

  const int size = 16;
  const CubeMap cube = latlong_to_cube(img, size);
  int best_face = -1, best_x = -1, best_y = -1;
  double best = -1.0;
  for (int face = 0; face < 6; ++face)
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x)
        if (cube.at(face, x, y).x > best) {
          best = cube.at(face, x, y).x;
          best_face = face;
          best_x = x;
          best_y = y;
        }
  CHECK(best_face == kFacePosX);
  CHECK(std::abs(best_x - size / 2) <= 1);
  CHECK(std::abs(best_y - size / 2) <= 1);
}

TEST_CASE("positivity projection clamps negative channels") {
  CubeMap map(4, {0.5, -0.25, 1.0});
  CHECK(min_channel(map) < 0.0);
  clamp_nonnegative(map);
  CHECK(min_channel(map) == 0.0);
  CHECK(all_finite(map));
}
