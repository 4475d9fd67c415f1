// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "recap/brdf.hpp"
#include "recap/cubemap.hpp"
#include "recap/image.hpp"
#include "recap/splat.hpp"

namespace recap {

// Structured parse failure with the offending byte offset.
struct HdrParseError : std::runtime_error {
  size_t offset;
  HdrParseError(const std::string& msg, size_t at)
      : std::runtime_error(msg + " (byte " + std::to_string(at) + ")"), offset(at) {}
};

// Radiance RGBE codec. Decode accepts flat and new-style RLE scanlines and
// normalizes orientation from the resolution line; encode emits new-style RLE
// (flat for widths outside [8, 32767]). decoded = (r,g,b) * 2^(e-136), e=0
// meaning black. encode(decode(x)) reproduces x's bytes for valid input.
Image3 decode_hdr(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> encode_hdr(const Image3& img);

// File wrappers; read_hdr additionally requires the 2:1 equirectangular shape.
LatLongImage read_hdr(const std::string& path);
void write_hdr(const LatLongImage& img, const std::string& path);
void write_hdr_image(const Image3& img, const std::string& path);

// 8-bit RGB PNG, values in [0,1] (else invalid-argument), rounding half-up.
void write_png(const Image3& img, const std::string& path);

// Raw float container: magic "RCAPDMP1", u32 dim count, u32 dims,
// little-endian f32 payload.
void write_float_dump(const std::string& path, const std::vector<uint32_t>& dims,
                      const std::vector<float>& data);
void read_float_dump(const std::string& path, std::vector<uint32_t>& dims,
                     std::vector<float>& data);

void write_cubemap_dump(const CubeMap& map, const std::string& path);
CubeMap read_cubemap_dump(const std::string& path);

// 16-byte header (magic "RCAPLUT1", u32 resolution, u32 seed) followed by
// interleaved (beta1, beta2) f32 pairs.
void write_brdf_lut(const BrdfLut& lut, const std::string& path);
BrdfLut read_brdf_lut(const std::string& path);

// Versioned column-layout scene container, magic "RCAPSCN1": u32 version,
// u32 point count, then per-field little-endian f32 arrays in declaration
// order: position xyz, scale xyz, rotation wxyz, opacity, basecolor rgb,
// specular_tint rgb, roughness, metallic.
void write_scene(const Scene& scene, const std::string& path);
Scene read_scene(const std::string& path);

// Plain-text camera list: one header line "<width> <height> <fov_x_degrees>"
// then 16 floats per camera, the row-major 4x4 camera-to-world transform in
// the common synthetic-dataset convention (right-handed, camera looks along
// -z, +y up). '#' starts a comment.
std::vector<Camera> read_cameras(const std::string& path);
void write_cameras(const std::vector<Camera>& cams, const std::string& path);

}  // namespace recap
