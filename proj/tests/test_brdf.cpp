// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "recap/brdf.hpp"
#include "recap/fixture.hpp"
#include "recap/rng.hpp"

using namespace recap;

namespace {

Vec3 random_unit(Pcg32& rng) {
  while (true) {
    Vec3 v{2 * rng.next_double() - 1, 2 * rng.next_double() - 1, 2 * rng.next_double() - 1};
    const double l = length(v);
    if (l > 1e-3 && l < 1.0) return v / l;
  }
}

// Hemisphere directions above n with n.l > eps and n.v > eps.
void random_geometry(Pcg32& rng, Vec3& n, Vec3& v, Vec3& l) {
  n = random_unit(rng);
  do v = random_unit(rng); while (dot(n, v) < 0.05);
  do l = random_unit(rng); while (dot(n, l) < 0.05);
}

}  // namespace

TEST_CASE("Schlick Fresnel endpoints") {
  const Rgb f0{0.2, 0.5, 0.9};
  const Rgb at_normal = fresnel_schlick(f0, 1.0);
  CHECK(length(at_normal - f0) < 1e-12);
  const Rgb grazing = fresnel_schlick(f0, 0.0);
  CHECK(length(grazing - Rgb{1, 1, 1}) < 1e-12);
}

TEST_CASE("GGX distribution integrates to 1 against the half-vector cosine") {
  // int D(h) (n.h) dw over the hemisphere = 1. D is isotropic in azimuth, so
  // the phi integral is 2*pi and theta is integrated by dense quadrature.
  for (double r : {0.3, 0.5, 1.0}) {
    const int nt = 4096;
    double total = 0.0;
    for (int i = 0; i < nt; ++i) {
      const double theta = (i + 0.5) * (kPi / 2) / nt;
      const double d = ggx_ndf(r, std::cos(theta));
      total += d * std::cos(theta) * std::sin(theta) * (kPi / 2 / nt) * 2 * kPi;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("GGX stays finite at the mirror singularity") {
  const double d = ggx_ndf(0.0, 1.0);
  CHECK(std::isfinite(d));
  CHECK(d > 0.0);
}

TEST_CASE("metallic blend: m=0 with black basecolor is the 0.04 gray lobe") {
  MaterialParams mat;
  mat.basecolor = {0, 0, 0};
  mat.metallic = 0.0;
  mat.roughness = 1.0;
  Pcg32 rng(5);
  for (int i = 0; i < 50; ++i) {
    Vec3 n, v, l;
    random_geometry(rng, n, v, l);
    const ShadingGeometry geom = make_geometry(n, v, l);
    const Rgb f = eval_brdf(mat, geom);
    CHECK(f.x == doctest::Approx(f.y).epsilon(1e-12));  // achromatic
    CHECK(f.y == doctest::Approx(f.z).epsilon(1e-12));
    LobeBrdf lobe;
    lobe.enable_diffuse = false;
    lobe.f0 = {0.04, 0.04, 0.04};
    lobe.roughness = 1.0;
    CHECK(length(f - eval_lobe_brdf(lobe, geom)) < 1e-12);
  }
}

TEST_CASE("metallic blend: m=1 removes the diffuse term exactly") {
  MaterialParams mat;
  mat.basecolor = {0.8, 0.4, 0.2};
  mat.metallic = 1.0;
  mat.roughness = 0.4;
  Pcg32 rng(6);
  for (int i = 0; i < 50; ++i) {
    Vec3 n, v, l;
    random_geometry(rng, n, v, l);
    const ShadingGeometry geom = make_geometry(n, v, l);
    LobeBrdf lobe;
    lobe.enable_diffuse = false;
    lobe.f0 = mat.basecolor;
    lobe.roughness = mat.roughness;
    CHECK(length(eval_brdf(mat, geom) - eval_lobe_brdf(lobe, geom)) < 1e-12);
  }
}

TEST_CASE("BRDF is non-negative over random geometries") {
  Pcg32 rng(8);
  for (int i = 0; i < 10000; ++i) {
    MaterialParams mat;
    mat.basecolor = {rng.next_double(), rng.next_double(), rng.next_double()};
    mat.roughness = rng.next_double();
    mat.metallic = rng.next_double();
    Vec3 n, v, l;
    random_geometry(rng, n, v, l);
    const Rgb f = eval_brdf(mat, make_geometry(n, v, l));
    CHECK(f.x >= 0.0);
    CHECK(f.y >= 0.0);
    CHECK(f.z >= 0.0);
  }
}

TEST_CASE("specular lobe is reciprocal in l and v") {
  Pcg32 rng(9);
  for (int i = 0; i < 200; ++i) {
    MaterialParams mat;
    mat.basecolor = {rng.next_double(), rng.next_double(), rng.next_double()};
    mat.roughness = 0.05 + 0.95 * rng.next_double();
    mat.metallic = rng.next_double();
    Vec3 n, v, l;
    random_geometry(rng, n, v, l);
    const Rgb f_lv = eval_brdf(mat, make_geometry(n, v, l));
    const Rgb f_vl = eval_brdf(mat, make_geometry(n, l, v));
    // The lambert part is constant, so full reciprocity holds.
    CHECK(length(f_lv - f_vl) < 1e-9 * (1.0 + length(f_lv)));
  }
}

TEST_CASE("environment BRDF table: bounds and the mirror corner") {
  const BrdfLut lut = integrate_brdf_lut(32, 512);
  for (const Vec2& e : lut.table) {
    CHECK(e.x >= 0.0);
    CHECK(e.y >= 0.0);
    CHECK(e.y <= 1.0);
    CHECK(e.x + e.y <= 1.0 + 1e-3);
  }
  // mu -> 1, r -> 0: a perfect mirror returns all energy at F = 1.
  const Vec2 corner = lut.at(31, 0);
  CHECK(corner.x + corner.y == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("environment BRDF table: beta2 is non-increasing in mu") {
  const BrdfLut lut = integrate_brdf_lut(32, 1024);
  for (int r = 0; r < 32; ++r)
    for (int mu = 0; mu + 1 < 32; ++mu)
      CHECK(lut.at(mu + 1, r).y <= lut.at(mu, r).y + 1e-6);
}

TEST_CASE("environment BRDF table is deterministic per seed") {
  const BrdfLut a = integrate_brdf_lut(16, 256, 7);
  const BrdfLut b = integrate_brdf_lut(16, 256, 7);
  const BrdfLut c = integrate_brdf_lut(16, 256, 8);
  REQUIRE(a.table.size() == b.table.size());
  bool identical = true, differs = false;
  for (size_t i = 0; i < a.table.size(); ++i) {
    identical = identical && a.table[i].x == b.table[i].x && a.table[i].y == b.table[i].y;
    differs = differs || a.table[i].x != c.table[i].x;
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("LUT input validation") {
  CHECK_THROWS_AS(integrate_brdf_lut(8, 512), std::invalid_argument);
  CHECK_THROWS_AS(integrate_brdf_lut(32, 64), std::invalid_argument);
}

TEST_CASE("rendering-equation estimator: black environment gives black") {
  const CubeMap env(8);
  MaterialParams mat;
  const McEstimate est = render_equation_mc(mat, {0, 0, 1}, {0, 0, 1}, env, 64, 1);
  CHECK(length(est.value) == 0.0);
}

TEST_CASE("rendering-equation estimator: lambert under constant light is c*b") {
  const CubeMap env(8, {0.8, 0.8, 0.8});
  LobeBrdf lobe;
  lobe.diffuse = {0.6, 0.3, 0.9};
  lobe.enable_specular = false;
  const Vec3 n = normalize(Vec3{0.3, 1, -0.2});
  const Vec3 v = normalize(Vec3{0, 0.8, 0.6});
  const McEstimate est = render_equation_mc(lobe, n, v, env, 20000, 42);
  const Rgb want = lobe.diffuse * 0.8;
  for (int c = 0; c < 3; ++c) {
    const double tol = 3.0 * est.std_error[c] + 1e-9;
    CHECK(std::fabs(est.value[c] - want[c]) < tol);
  }
}

TEST_CASE("white furnace: no energy creation in single scattering") {
  const CubeMap env(8, {1, 1, 1});
  for (double r : {0.05, 0.3, 0.6, 1.0}) {
    LobeBrdf lobe;
    lobe.enable_diffuse = false;
    lobe.f0 = {1, 1, 1};
    lobe.roughness = r;
    const Vec3 n{0, 1, 0};
    const Vec3 v = normalize(Vec3{0.4, 0.9, 0});
    const McEstimate est = render_equation_mc(lobe, n, v, env, 65536, 3);
    CHECK(est.value.x <= 1.02);
  }
}

TEST_CASE("estimator standard error halves when samples quadruple") {
  const CubeMap env = bake_env(env_three_point(), 16);
  LobeBrdf lobe;
  lobe.diffuse = {0.5, 0.5, 0.5};
  lobe.f0 = {0.3, 0.3, 0.3};
  lobe.roughness = 0.3;
  const Vec3 n{0, 1, 0};
  const Vec3 v = normalize(Vec3{0.5, 1, 0.2});
  const McEstimate small = render_equation_mc(lobe, n, v, env, 4096, 11);
  const McEstimate large = render_equation_mc(lobe, n, v, env, 16384, 11);
  const double ratio = mean(small.std_error) / mean(large.std_error);
  CHECK(ratio > 2.0 / 1.5);
  CHECK(ratio < 2.0 * 1.5);
}

TEST_CASE("estimator rejects tiny sample counts and sideways views") {
  const CubeMap env(8, {1, 1, 1});
  MaterialParams mat;
  CHECK_THROWS_AS(render_equation_mc(mat, {0, 0, 1}, {0, 0, 1}, env, 8, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(render_equation_mc(mat, {0, 0, 1}, {0, 0, -1}, env, 64, 0),
                  std::invalid_argument);
}
