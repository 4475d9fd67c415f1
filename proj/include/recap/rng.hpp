// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "recap/vec.hpp"

namespace recap {

// PCG32: small deterministic generator so results are identical across
// platforms and standard-library versions.
struct Pcg32 {
  uint64_t state = 0x853c49e6748fea9bULL;
  uint64_t inc = 0xda3e39cb94b95bdbULL;

  explicit Pcg32(uint64_t seed = 0x853c49e6748fea9bULL, uint64_t seq = 1) {
    state = 0;
    inc = (seq << 1u) | 1u;
    next_u32();
    state += seed;
    next_u32();
  }

  uint32_t next_u32() {
    uint64_t old = state;
    state = old * 6364136223846793005ULL + inc;
    uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
    uint32_t rot = static_cast<uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((~rot + 1u) & 31u));
  }

  // Uniform in [0, 1).
  double next_double() { return next_u32() * (1.0 / 4294967296.0); }

  Vec2 next_vec2() {
    const double a = next_double();
    const double b = next_double();
    return {a, b};
  }
};

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
  // FNV-1a over the 8 bytes of v.
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}

// Van der Corput radical inverse, base 2.
inline double radical_inverse(uint32_t bits) {
  bits = (bits << 16u) | (bits >> 16u);
  bits = ((bits & 0x55555555u) << 1u) | ((bits & 0xAAAAAAAAu) >> 1u);
  bits = ((bits & 0x33333333u) << 2u) | ((bits & 0xCCCCCCCCu) >> 2u);
  bits = ((bits & 0x0F0F0F0Fu) << 4u) | ((bits & 0xF0F0F0F0u) >> 4u);
  bits = ((bits & 0x00FF00FFu) << 8u) | ((bits & 0xFF00FF00u) >> 8u);
  return double(bits) * 2.3283064365386963e-10;
}

// Hammersley point i of n, Cranley-Patterson rotated by a per-stream offset
// so different texels do not share the exact sample pattern.
inline Vec2 hammersley(uint32_t i, uint32_t n, const Vec2& offset = {0, 0}) {
  double u = (double(i) + 0.5) / double(n) + offset.x;
  double v = radical_inverse(i) + offset.y;
  u -= std::floor(u);
  v -= std::floor(v);
  return {u, v};
}

}  // namespace recap
