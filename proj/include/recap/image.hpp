// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "recap/vec.hpp"

namespace recap {

// Row-major H×W grid of RGB triples, row 0 at the top.
struct Image3 {
  int width = 0, height = 0;
  std::vector<Rgb> pixels;

  Image3() = default;
  Image3(int w, int h, const Rgb& fill = {0, 0, 0})
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("Image3: non-positive size");
  }

  Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  size_t size() const { return pixels.size(); }
};

struct Image1 {
  int width = 0, height = 0;
  std::vector<double> pixels;

  Image1() = default;
  Image1(int w, int h, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  double& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
};

// Equirectangular radiance map, linear RGB. Row 0 holds the +y pole, the
// azimuth angle runs from +x toward +z with column index. Width is always
// twice the height.
struct LatLongImage {
  Image3 image;

  LatLongImage() = default;
  LatLongImage(int width, int height, const Rgb& fill = {0, 0, 0}) : image(width, height, fill) {
    if (width != 2 * height) throw std::invalid_argument("LatLongImage: width must equal 2*height");
  }
  explicit LatLongImage(Image3 img) : image(std::move(img)) {
    if (image.width != 2 * image.height)
      throw std::invalid_argument("LatLongImage: width must equal 2*height");
  }

  int width() const { return image.width; }
  int height() const { return image.height; }
  Rgb& at(int x, int y) { return image.at(x, y); }
  const Rgb& at(int x, int y) const { return image.at(x, y); }
};

// Direction for the center of lat-long texel (x, y).
Vec3 latlong_texel_direction(const LatLongImage& img, int x, int y);

// Bilinear lookup of a unit direction; wraps in azimuth, clamps at the poles.
Rgb sample_latlong(const LatLongImage& img, const Vec3& dir);

}  // namespace recap
