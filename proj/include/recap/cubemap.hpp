// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "recap/image.hpp"
#include "recap/vec.hpp"

namespace recap {

// Cube face order: +x, -x, +y, -y, +z, -z.
//
// World space is right-handed with +y up. Within a face, u runs along texel
// columns and v along texel rows, texel centers at (i + 0.5) / face_size.
// With s = 2u-1 and t = 2v-1 the un-normalized direction through (face, u, v)
// is:
//
//   +x: ( 1, -t, -s)      +y: ( s,  1,  t)      +z: ( s, -t,  1)
//   -x: (-1, -t,  s)      -y: ( s, -1, -t)      -z: (-s, -t, -1)
//
// This is the classic cube-map layout (u/v point the same way as in the
// widely used cubemap processing tools); +y face center maps to (0,1,0).
enum CubeFace { kFacePosX = 0, kFaceNegX, kFacePosY, kFaceNegY, kFacePosZ, kFaceNegZ };

struct CubeMap {
  int face_size = 0;
  // Face-major, then row-major within a face: index = (face*S + y)*S + x.
  std::vector<Rgb> texels;

  CubeMap() = default;
  explicit CubeMap(int size, const Rgb& fill = {0, 0, 0});

  Rgb& at(int face, int x, int y) {
    return texels[(static_cast<size_t>(face) * face_size + y) * face_size + x];
  }
  const Rgb& at(int face, int x, int y) const {
    return texels[(static_cast<size_t>(face) * face_size + y) * face_size + x];
  }
  size_t texel_count() const { return texels.size(); }
};

struct FaceUv {
  int face = 0;
  double u = 0.0, v = 0.0;  // in [0, 1)
};

// World direction through the texel center at (face, u, v); unit length.
Vec3 texel_direction(int face, double u, double v);

// Inverse of texel_direction: dominant-axis face plus in-face coordinates.
FaceUv direction_to_texel(const Vec3& dir);

// One bilinear tap inside a face.
struct CubeTap {
  int face = 0, x = 0, y = 0;
  double weight = 0.0;
};

// The four clamp-to-edge bilinear taps for a unit direction. Weights sum to 1.
std::array<CubeTap, 4> sample_taps(int face_size, const Vec3& dir);

// Bilinear lookup. Throws std::invalid_argument if |dir| is off unit length
// by more than 1e-6.
Rgb sample(const CubeMap& map, const Vec3& dir);

// Exact solid angle of texel (x, y) on a face of the given size. The sum over
// all 6*size^2 texels is 4*pi up to floating-point rounding.
double texel_solid_angle(int face_size, int x, int y);

// Equirectangular <-> cube conversions; each output texel is a bilinear
// sample of the source at the output texel-center direction.
CubeMap latlong_to_cube(const LatLongImage& img, int face_size);
LatLongImage cube_to_latlong(const CubeMap& map, int height);

// Positivity projection: clamps every channel to [0, inf).
void clamp_nonnegative(CubeMap& map);

bool all_finite(const CubeMap& map);
double min_channel(const CubeMap& map);

}  // namespace recap
