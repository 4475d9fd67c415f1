// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/cubemap.hpp"

#include <cmath>
#include <stdexcept>

#include "recap/parallel.hpp"

namespace recap {

CubeMap::CubeMap(int size, const Rgb& fill) : face_size(size) {
  if (size <= 0) throw std::invalid_argument("CubeMap: face_size must be positive");
  texels.assign(static_cast<size_t>(6) * size * size, fill);
}

Vec3 texel_direction(int face, double u, double v) {
  const double s = 2.0 * u - 1.0;
  const double t = 2.0 * v - 1.0;
  Vec3 d;
  switch (face) {
    case kFacePosX: d = {1.0, -t, -s}; break;
    case kFaceNegX: d = {-1.0, -t, s}; break;
    case kFacePosY: d = {s, 1.0, t}; break;
    case kFaceNegY: d = {s, -1.0, -t}; break;
    case kFacePosZ: d = {s, -t, 1.0}; break;
    case kFaceNegZ: d = {-s, -t, -1.0}; break;
    default: throw std::invalid_argument("texel_direction: face out of range");
  }
  return normalize(d);
}

FaceUv direction_to_texel(const Vec3& dir) {
  const double ax = std::fabs(dir.x), ay = std::fabs(dir.y), az = std::fabs(dir.z);
  int face;
  double s, t;
  if (ax >= ay && ax >= az) {
    if (dir.x > 0) { face = kFacePosX; s = -dir.z / ax; t = -dir.y / ax; }
    else           { face = kFaceNegX; s = dir.z / ax;  t = -dir.y / ax; }
  } else if (ay >= az) {
    if (dir.y > 0) { face = kFacePosY; s = dir.x / ay; t = dir.z / ay; }
    else           { face = kFaceNegY; s = dir.x / ay; t = -dir.z / ay; }
  } else {
    if (dir.z > 0) { face = kFacePosZ; s = dir.x / az; t = -dir.y / az; }
    else           { face = kFaceNegZ; s = -dir.x / az; t = -dir.y / az; }
  }
  return {face, (s + 1.0) * 0.5, (t + 1.0) * 0.5};
}

std::array<CubeTap, 4> sample_taps(int face_size, const Vec3& dir) {
  const FaceUv fuv = direction_to_texel(dir);
  const double fx = fuv.u * face_size - 0.5;
  const double fy = fuv.v * face_size - 0.5;
  int x0 = static_cast<int>(std::floor(fx));
  int y0 = static_cast<int>(std::floor(fy));
  const double tx = fx - x0;
  const double ty = fy - y0;
  auto clampi = [face_size](int i) { return std::clamp(i, 0, face_size - 1); };
  const int x1 = clampi(x0 + 1), y1 = clampi(y0 + 1);
  x0 = clampi(x0);
  y0 = clampi(y0);
  return {CubeTap{fuv.face, x0, y0, (1 - tx) * (1 - ty)},
          CubeTap{fuv.face, x1, y0, tx * (1 - ty)},
          CubeTap{fuv.face, x0, y1, (1 - tx) * ty},
          CubeTap{fuv.face, x1, y1, tx * ty}};
}

Rgb sample(const CubeMap& map, const Vec3& dir) {
  const double len = length(dir);
  if (std::fabs(len - 1.0) > 1e-6)
    throw std::invalid_argument("sample: direction must be unit length");
  Rgb out{0, 0, 0};
  for (const CubeTap& tap : sample_taps(map.face_size, dir))
    out += map.at(tap.face, tap.x, tap.y) * tap.weight;
  return out;
}

namespace {

// Solid angle of the face region [0,x] x [0,y] (face plane at distance 1),
// per the standard area-element formula.
double area_element(double x, double y) {
  return std::atan2(x * y, std::sqrt(x * x + y * y + 1.0));
}

}  // namespace

double texel_solid_angle(int face_size, int x, int y) {
  const double inv = 1.0 / face_size;
  const double x0 = 2.0 * (x * inv) - 1.0;
  const double x1 = 2.0 * ((x + 1) * inv) - 1.0;
  const double y0 = 2.0 * (y * inv) - 1.0;
  const double y1 = 2.0 * ((y + 1) * inv) - 1.0;
  return area_element(x0, y0) - area_element(x0, y1) - area_element(x1, y0) +
         area_element(x1, y1);
}

Vec3 latlong_texel_direction(const LatLongImage& img, int x, int y) {
  const double phi = 2.0 * kPi * (x + 0.5) / img.width();
  const double theta = kPi * (y + 0.5) / img.height();
  const double st = std::sin(theta);
  return {st * std::cos(phi), std::cos(theta), st * std::sin(phi)};
}

Rgb sample_latlong(const LatLongImage& img, const Vec3& dir) {
  const int w = img.width(), h = img.height();
  double phi = std::atan2(dir.z, dir.x);
  if (phi < 0) phi += 2.0 * kPi;
  const double theta = std::acos(std::clamp(dir.y, -1.0, 1.0));
  const double fx = phi / (2.0 * kPi) * w - 0.5;
  const double fy = theta / kPi * h - 0.5;
  const int x0 = static_cast<int>(std::floor(fx));
  const int y0 = static_cast<int>(std::floor(fy));
  const double tx = fx - x0;
  const double ty = fy - y0;
  auto wrapx = [w](int i) { return ((i % w) + w) % w; };  // azimuth wraps
  auto clampy = [h](int i) { return std::clamp(i, 0, h - 1); };  // poles clamp
  const Rgb c00 = img.at(wrapx(x0), clampy(y0));
  const Rgb c10 = img.at(wrapx(x0 + 1), clampy(y0));
  const Rgb c01 = img.at(wrapx(x0), clampy(y0 + 1));
  const Rgb c11 = img.at(wrapx(x0 + 1), clampy(y0 + 1));
  return lerp(lerp(c00, c10, tx), lerp(c01, c11, tx), ty);
}

CubeMap latlong_to_cube(const LatLongImage& img, int face_size) {
  CubeMap out(face_size);
  const int64_t per_face = static_cast<int64_t>(face_size) * face_size;
  parallel_for(0, 6 * per_face, [&](int64_t idx, int) {
    const int face = static_cast<int>(idx / per_face);
    const int y = static_cast<int>((idx % per_face) / face_size);
    const int x = static_cast<int>(idx % face_size);
    const Vec3 dir =
        texel_direction(face, (x + 0.5) / face_size, (y + 0.5) / face_size);
    out.at(face, x, y) = sample_latlong(img, dir);
  });
  return out;
}

LatLongImage cube_to_latlong(const CubeMap& map, int height) {
  LatLongImage out(2 * height, height);
  parallel_for(0, static_cast<int64_t>(height) * 2 * height, [&](int64_t idx, int) {
    const int y = static_cast<int>(idx / (2 * height));
    const int x = static_cast<int>(idx % (2 * height));
    out.at(x, y) = sample(map, latlong_texel_direction(out, x, y));
  });
  return out;
}

void clamp_nonnegative(CubeMap& map) {
  for (Rgb& t : map.texels) t = vmax(t, {0, 0, 0});
}

bool all_finite(const CubeMap& map) {
  for (const Rgb& t : map.texels)
    if (!all_finite(t)) return false;
  return true;
}

double min_channel(const CubeMap& map) {
  double m = std::numeric_limits<double>::infinity();
  for (const Rgb& t : map.texels) m = std::min(m, min_component(t));
  return m;
}

}  // namespace recap
