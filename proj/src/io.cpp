// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/io.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace recap {

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 24) & 0xff);
}

void put_f32(std::vector<uint8_t>& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

struct Reader {
  const std::vector<uint8_t>& bytes;
  size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  uint8_t u8() {
    if (pos >= bytes.size()) throw HdrParseError("unexpected end of data", pos);
    return bytes[pos++];
  }
  uint32_t u32(const char* what) {
    if (pos + 4 > bytes.size())
      throw std::runtime_error(std::string("truncated ") + what);
    uint32_t v = bytes[pos] | (bytes[pos + 1] << 8) | (uint32_t(bytes[pos + 2]) << 16) |
                 (uint32_t(bytes[pos + 3]) << 24);
    pos += 4;
    return v;
  }
  float f32(const char* what) {
    const uint32_t bits = u32(what);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
};

// ---- Radiance RGBE ----------------------------------------------------

Rgb rgbe_to_float(uint8_t r, uint8_t g, uint8_t b, uint8_t e) {
  if (e == 0) return {0, 0, 0};
  const double f = std::ldexp(1.0, int(e) - (128 + 8));
  return {r * f, g * f, b * f};
}

void float_to_rgbe(const Rgb& c, uint8_t out[4]) {
  const double v = max_component(c);
  if (v < 1e-32) {
    out[0] = out[1] = out[2] = out[3] = 0;
    return;
  }
  int e;
  const double m = std::frexp(v, &e);
  const double scale = m * 256.0 / v;
  out[0] = static_cast<uint8_t>(c.x * scale);
  out[1] = static_cast<uint8_t>(c.y * scale);
  out[2] = static_cast<uint8_t>(c.z * scale);
  out[3] = static_cast<uint8_t>(e + 128);
}

// Reads one header line (ending '\n'), bounded.
std::string read_line(Reader& r) {
  std::string line;
  while (true) {
    const size_t at = r.pos;
    const uint8_t c = r.u8();
    if (c == '\n') return line;
    if (line.size() > 4096) throw HdrParseError("header line too long", at);
    line.push_back(static_cast<char>(c));
  }
}

void decode_scanline(Reader& r, Rgb* row, int width) {
  // Peek for the new-style RLE marker.
  const size_t start = r.pos;
  const uint8_t b0 = r.u8(), b1 = r.u8(), b2 = r.u8(), b3 = r.u8();
  const bool rle = (b0 == 2 && b1 == 2 && (b2 & 0x80) == 0);
  if (!rle) {
    // Old-style flat scanline; the four bytes already read are pixel 0.
    row[0] = rgbe_to_float(b0, b1, b2, b3);
    for (int x = 1; x < width; ++x) {
      const uint8_t pr = r.u8(), pg = r.u8(), pb = r.u8(), pe = r.u8();
      row[x] = rgbe_to_float(pr, pg, pb, pe);
    }
    return;
  }
  if (((int(b2) << 8) | b3) != width)
    throw HdrParseError("RLE scanline width mismatch", start);

  std::vector<uint8_t> channels(static_cast<size_t>(4) * width);
  for (int ch = 0; ch < 4; ++ch) {
    int filled = 0;
    while (filled < width) {
      const size_t at = r.pos;
      const uint8_t code = r.u8();
      if (code > 128) {
        const int count = code - 128;
        if (filled + count > width) throw HdrParseError("RLE run overflows scanline", at);
        const uint8_t value = r.u8();
        for (int i = 0; i < count; ++i) channels[ch * width + filled++] = value;
      } else {
        const int count = code;
        if (count == 0) throw HdrParseError("zero-length RLE literal", at);
        if (filled + count > width) throw HdrParseError("RLE literal overflows scanline", at);
        for (int i = 0; i < count; ++i) channels[ch * width + filled++] = r.u8();
      }
    }
  }
  for (int x = 0; x < width; ++x)
    row[x] = rgbe_to_float(channels[x], channels[width + x], channels[2 * width + x],
                           channels[3 * width + x]);
}

void encode_scanline_rle(std::vector<uint8_t>& out, const Rgb* row, int width) {
  out.push_back(2);
  out.push_back(2);
  out.push_back(static_cast<uint8_t>(width >> 8));
  out.push_back(static_cast<uint8_t>(width & 0xff));

  std::vector<uint8_t> channels(static_cast<size_t>(4) * width);
  for (int x = 0; x < width; ++x) {
    uint8_t rgbe[4];
    float_to_rgbe(row[x], rgbe);
    for (int ch = 0; ch < 4; ++ch) channels[ch * width + x] = rgbe[ch];
  }

  for (int ch = 0; ch < 4; ++ch) {
    const uint8_t* data = &channels[ch * width];
    int cur = 0;
    while (cur < width) {
      // Find the next run of length >= 4.
      int run_start = cur, run_len = 0;
      while (run_start < width) {
        run_len = 1;
        while (run_start + run_len < width && run_len < 127 &&
               data[run_start] == data[run_start + run_len])
          ++run_len;
        if (run_len >= 4) break;
        run_start += run_len;
      }
      // Literals up to the run.
      int lit = cur;
      while (lit < run_start && lit < width) {
        const int n = std::min(128, (run_start < width ? run_start : width) - lit);
        out.push_back(static_cast<uint8_t>(n));
        out.insert(out.end(), data + lit, data + lit + n);
        lit += n;
      }
      cur = lit;
      if (run_start < width && run_len >= 4) {
        out.push_back(static_cast<uint8_t>(128 + run_len));
        out.push_back(data[run_start]);
        cur = run_start + run_len;
      }
    }
  }
}

}  // namespace

Image3 decode_hdr(const std::vector<uint8_t>& bytes) {
  Reader r{bytes};
  const std::string magic = read_line(r);
  if (magic.rfind("#?", 0) != 0) throw HdrParseError("missing #? magic", 0);

  bool format_ok = false;
  while (true) {
    const size_t at = r.pos;
    const std::string line = read_line(r);
    if (line.empty()) break;  // blank line ends the header
    if (line.rfind("FORMAT=", 0) == 0) {
      if (line == "FORMAT=32-bit_rle_rgbe") format_ok = true;
      else throw HdrParseError("unsupported FORMAT: " + line, at);
    }
    // GAMMA=/EXPOSURE=/comments are tolerated and ignored.
  }
  if (!format_ok) throw HdrParseError("missing FORMAT=32-bit_rle_rgbe", r.pos);

  const size_t res_at = r.pos;
  const std::string res = read_line(r);
  char ysign, xsign, yaxis, xaxis;
  int h = 0, w = 0;
  {
    std::istringstream ss(res);
    std::string t1, t2, t3, t4;
    if (!(ss >> t1 >> t2 >> t3 >> t4) || t1.size() != 2 || t3.size() != 2)
      throw HdrParseError("bad resolution line: " + res, res_at);
    ysign = t1[0]; yaxis = t1[1];
    xsign = t3[0]; xaxis = t3[1];
    try {
      h = std::stoi(t2);
      w = std::stoi(t4);
    } catch (const std::exception&) {
      throw HdrParseError("bad resolution numbers: " + res, res_at);
    }
  }
  if (yaxis != 'Y' || xaxis != 'X' || (ysign != '-' && ysign != '+') ||
      (xsign != '-' && xsign != '+'))
    throw HdrParseError("unsupported orientation: " + res, res_at);
  if (w <= 0 || h <= 0 || w > 1 << 16 || h > 1 << 16)
    throw HdrParseError("unreasonable resolution: " + res, res_at);

  Image3 img(w, h);
  std::vector<Rgb> row(w);
  for (int y = 0; y < h; ++y) {
    decode_scanline(r, row.data(), w);
    // -Y means rows top to bottom, -X means columns right to left.
    const int dst_y = ysign == '-' ? y : h - 1 - y;
    for (int x = 0; x < w; ++x)
      img.at(xsign == '+' ? x : w - 1 - x, dst_y) = row[x];
  }
  return img;
}

std::vector<uint8_t> encode_hdr(const Image3& img) {
  std::vector<uint8_t> out;
  const std::string header = "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " +
                             std::to_string(img.height) + " +X " +
                             std::to_string(img.width) + "\n";
  out.insert(out.end(), header.begin(), header.end());
  const bool rle = img.width >= 8 && img.width <= 0x7fff;
  for (int y = 0; y < img.height; ++y) {
    const Rgb* row = &img.at(0, y);
    if (rle) {
      encode_scanline_rle(out, row, img.width);
    } else {
      for (int x = 0; x < img.width; ++x) {
        uint8_t rgbe[4];
        float_to_rgbe(row[x], rgbe);
        out.insert(out.end(), rgbe, rgbe + 4);
      }
    }
  }
  return out;
}

LatLongImage read_hdr(const std::string& path) {
  Image3 img = decode_hdr(read_file(path));
  if (img.width != 2 * img.height)
    throw std::runtime_error(path + ": expected 2:1 equirectangular image, got " +
                             std::to_string(img.width) + "x" + std::to_string(img.height));
  return LatLongImage(std::move(img));
}

void write_hdr(const LatLongImage& img, const std::string& path) {
  write_file(path, encode_hdr(img.image));
}

void write_hdr_image(const Image3& img, const std::string& path) {
  write_file(path, encode_hdr(img));
}

// ---- PNG ---------------------------------------------------------------

namespace {

void put_chunk(std::vector<uint8_t>& out, const char type[4],
               const std::vector<uint8_t>& payload) {
  const uint32_t len = static_cast<uint32_t>(payload.size());
  out.push_back((len >> 24) & 0xff);
  out.push_back((len >> 16) & 0xff);
  out.push_back((len >> 8) & 0xff);
  out.push_back(len & 0xff);
  const size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  const uLong crc = crc32(0L, out.data() + type_at, static_cast<uInt>(4 + payload.size()));
  out.push_back((crc >> 24) & 0xff);
  out.push_back((crc >> 16) & 0xff);
  out.push_back((crc >> 8) & 0xff);
  out.push_back(crc & 0xff);
}

}  // namespace

void write_png(const Image3& img, const std::string& path) {
  std::vector<uint8_t> raw;
  raw.reserve(static_cast<size_t>(img.height) * (1 + 3 * img.width));
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);  // filter: none
    for (int x = 0; x < img.width; ++x) {
      const Rgb& c = img.at(x, y);
      for (int ch = 0; ch < 3; ++ch) {
        const double v = c[ch];
        if (!(v >= 0.0 && v <= 1.0))
          throw std::invalid_argument("write_png: value outside [0,1]");
        raw.push_back(static_cast<uint8_t>(std::floor(v * 255.0 + 0.5)));
      }
    }
  }

  uLongf comp_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<uint8_t> compressed(comp_size);
  if (compress2(compressed.data(), &comp_size, raw.data(), static_cast<uLong>(raw.size()),
                Z_BEST_COMPRESSION) != Z_OK)
    throw std::runtime_error("write_png: deflate failed");
  compressed.resize(comp_size);

  std::vector<uint8_t> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  std::vector<uint8_t> ihdr;
  auto put_be32 = [](std::vector<uint8_t>& v, uint32_t x) {
    v.push_back((x >> 24) & 0xff);
    v.push_back((x >> 16) & 0xff);
    v.push_back((x >> 8) & 0xff);
    v.push_back(x & 0xff);
  };
  put_be32(ihdr, static_cast<uint32_t>(img.width));
  put_be32(ihdr, static_cast<uint32_t>(img.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: RGB
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // interlace
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", compressed);
  put_chunk(out, "IEND", {});
  write_file(path, out);
}

// ---- Float dumps ---------------------------------------------------------

void write_float_dump(const std::string& path, const std::vector<uint32_t>& dims,
                      const std::vector<float>& data) {
  std::vector<uint8_t> out;
  const char magic[] = "RCAPDMP1";
  out.insert(out.end(), magic, magic + 8);
  put_u32(out, static_cast<uint32_t>(dims.size()));
  size_t expected = 1;
  for (uint32_t d : dims) {
    put_u32(out, d);
    expected *= d;
  }
  if (expected != data.size())
    throw std::invalid_argument("write_float_dump: dims do not match payload size");
  out.reserve(out.size() + 4 * data.size());
  for (float v : data) put_f32(out, v);
  write_file(path, out);
}

void read_float_dump(const std::string& path, std::vector<uint32_t>& dims,
                     std::vector<float>& data) {
  const std::vector<uint8_t> bytes = read_file(path);
  Reader r{bytes};
  if (bytes.size() < 8 || std::memcmp(bytes.data(), "RCAPDMP1", 8) != 0)
    throw std::runtime_error(path + ": bad float-dump magic");
  r.pos = 8;
  const uint32_t ndims = r.u32("dim count");
  if (ndims > 16) throw std::runtime_error(path + ": unreasonable dim count");
  dims.clear();
  size_t total = 1;
  for (uint32_t i = 0; i < ndims; ++i) {
    dims.push_back(r.u32("dims"));
    total *= dims.back();
  }
  if (r.pos + 4 * total != bytes.size())
    throw std::runtime_error(path + ": payload size mismatch");
  data.resize(total);
  for (size_t i = 0; i < total; ++i) data[i] = r.f32("payload");
}

void write_cubemap_dump(const CubeMap& map, const std::string& path) {
  std::vector<float> data;
  data.reserve(map.texel_count() * 3);
  for (const Rgb& t : map.texels) {
    data.push_back(static_cast<float>(t.x));
    data.push_back(static_cast<float>(t.y));
    data.push_back(static_cast<float>(t.z));
  }
  write_float_dump(path,
                   {6u, static_cast<uint32_t>(map.face_size),
                    static_cast<uint32_t>(map.face_size), 3u},
                   data);
}

CubeMap read_cubemap_dump(const std::string& path) {
  std::vector<uint32_t> dims;
  std::vector<float> data;
  read_float_dump(path, dims, data);
  if (dims.size() != 4 || dims[0] != 6 || dims[1] != dims[2] || dims[3] != 3)
    throw std::runtime_error(path + ": not a cube-map dump");
  CubeMap map(static_cast<int>(dims[1]));
  for (size_t i = 0; i < map.texel_count(); ++i)
    map.texels[i] = {data[3 * i], data[3 * i + 1], data[3 * i + 2]};
  return map;
}

void write_brdf_lut(const BrdfLut& lut, const std::string& path) {
  std::vector<uint8_t> out;
  const char magic[] = "RCAPLUT1";
  out.insert(out.end(), magic, magic + 8);
  put_u32(out, static_cast<uint32_t>(lut.resolution));
  put_u32(out, lut.seed);
  for (const Vec2& e : lut.table) {
    put_f32(out, static_cast<float>(e.x));
    put_f32(out, static_cast<float>(e.y));
  }
  write_file(path, out);
}

BrdfLut read_brdf_lut(const std::string& path) {
  const std::vector<uint8_t> bytes = read_file(path);
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "RCAPLUT1", 8) != 0)
    throw std::runtime_error(path + ": bad LUT magic");
  Reader r{bytes};
  r.pos = 8;
  BrdfLut lut;
  lut.resolution = static_cast<int>(r.u32("resolution"));
  lut.seed = r.u32("seed");
  const size_t n = static_cast<size_t>(lut.resolution) * lut.resolution;
  if (bytes.size() != 16 + 8 * n) throw std::runtime_error(path + ": LUT size mismatch");
  lut.table.resize(n);
  for (size_t i = 0; i < n; ++i) {
    lut.table[i].x = r.f32("beta1");
    lut.table[i].y = r.f32("beta2");
  }
  return lut;
}

// ---- Scene / cameras -------------------------------------------------------

void write_scene(const Scene& scene, const std::string& path) {
  std::vector<uint8_t> out;
  const char magic[] = "RCAPSCN1";
  out.insert(out.end(), magic, magic + 8);
  put_u32(out, 1);  // version
  put_u32(out, static_cast<uint32_t>(scene.size()));
  auto put_vec3s = [&](auto getter) {
    for (const GaussianPoint& p : scene) {
      const Vec3 v = getter(p);
      put_f32(out, static_cast<float>(v.x));
      put_f32(out, static_cast<float>(v.y));
      put_f32(out, static_cast<float>(v.z));
    }
  };
  put_vec3s([](const GaussianPoint& p) { return p.position; });
  put_vec3s([](const GaussianPoint& p) { return p.scale; });
  for (const GaussianPoint& p : scene) {
    put_f32(out, static_cast<float>(p.rotation.w));
    put_f32(out, static_cast<float>(p.rotation.x));
    put_f32(out, static_cast<float>(p.rotation.y));
    put_f32(out, static_cast<float>(p.rotation.z));
  }
  for (const GaussianPoint& p : scene) put_f32(out, static_cast<float>(p.opacity));
  put_vec3s([](const GaussianPoint& p) { return p.material.basecolor; });
  put_vec3s([](const GaussianPoint& p) { return p.material.specular_tint; });
  for (const GaussianPoint& p : scene) put_f32(out, static_cast<float>(p.material.roughness));
  for (const GaussianPoint& p : scene) put_f32(out, static_cast<float>(p.material.metallic));
  write_file(path, out);
}

Scene read_scene(const std::string& path) {
  const std::vector<uint8_t> bytes = read_file(path);
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "RCAPSCN1", 8) != 0)
    throw std::runtime_error(path + ": bad scene magic");
  Reader r{bytes};
  r.pos = 8;
  const uint32_t version = r.u32("version");
  if (version != 1) throw std::runtime_error(path + ": unsupported scene version");
  const uint32_t count = r.u32("point count");
  const size_t expected = 16 + static_cast<size_t>(count) * 19 * 4;
  if (bytes.size() != expected) throw std::runtime_error(path + ": scene size mismatch");

  Scene scene(count);
  auto get_vec3s = [&](auto setter) {
    for (uint32_t i = 0; i < count; ++i) {
      Vec3 v{r.f32("field"), r.f32("field"), r.f32("field")};
      setter(scene[i], v);
    }
  };
  get_vec3s([](GaussianPoint& p, const Vec3& v) { p.position = v; });
  get_vec3s([](GaussianPoint& p, const Vec3& v) { p.scale = v; });
  for (uint32_t i = 0; i < count; ++i) {
    scene[i].rotation.w = r.f32("rotation");
    scene[i].rotation.x = r.f32("rotation");
    scene[i].rotation.y = r.f32("rotation");
    scene[i].rotation.z = r.f32("rotation");
  }
  for (uint32_t i = 0; i < count; ++i) scene[i].opacity = r.f32("opacity");
  get_vec3s([](GaussianPoint& p, const Vec3& v) { p.material.basecolor = v; });
  get_vec3s([](GaussianPoint& p, const Vec3& v) { p.material.specular_tint = v; });
  for (uint32_t i = 0; i < count; ++i) scene[i].material.roughness = r.f32("roughness");
  for (uint32_t i = 0; i < count; ++i) scene[i].material.metallic = r.f32("metallic");
  return scene;
}

std::vector<Camera> read_cameras(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v;
    while (ss >> v) values.push_back(v);
  }
  if (values.size() < 3 || (values.size() - 3) % 16 != 0)
    throw std::runtime_error(path + ": expected header + 16 floats per camera");

  const int width = static_cast<int>(values[0]);
  const int height = static_cast<int>(values[1]);
  const double fov_x = values[2];
  if (width <= 0 || height <= 0 || fov_x <= 0 || fov_x >= 180)
    throw std::runtime_error(path + ": bad camera header");

  std::vector<Camera> cams;
  const size_t n = (values.size() - 3) / 16;
  for (size_t i = 0; i < n; ++i) {
    const double* m = &values[3 + 16 * i];
    // Camera-to-world, OpenGL convention: columns are right, up, backward.
    const Vec3 right{m[0], m[4], m[8]};
    const Vec3 up{m[1], m[5], m[9]};
    const Vec3 backward{m[2], m[6], m[10]};
    const Vec3 eye{m[3], m[7], m[11]};
    Camera cam;
    // Internal rows: right, down, forward.
    cam.rotation.m = {right.x, right.y, right.z, -up.x, -up.y, -up.z,
                      -backward.x, -backward.y, -backward.z};
    cam.translation = -(cam.rotation * eye);
    cam.width = width;
    cam.height = height;
    cam.fx = (width * 0.5) / std::tan(fov_x * kPi / 180.0 * 0.5);
    cam.fy = cam.fx;
    cam.cx = width * 0.5;
    cam.cy = height * 0.5;
    cams.push_back(cam);
  }
  return cams;
}

void write_cameras(const std::vector<Camera>& cams, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "# width height fov_x_degrees; then per camera a row-major 4x4\n";
  out << "# camera-to-world matrix (right-handed, camera looks along -z, +y up)\n";
  if (cams.empty()) {
    out << "0 0 0\n";
    return;
  }
  const Camera& c0 = cams.front();
  const double fov_x = 2.0 * std::atan((c0.width * 0.5) / c0.fx) * 180.0 / kPi;
  out.precision(17);
  out << c0.width << " " << c0.height << " " << fov_x << "\n";
  for (const Camera& cam : cams) {
    const Mat3 c2w = transpose(cam.rotation);  // columns: right, down, forward
    const Vec3 eye = cam.position();
    const Vec3 right{c2w(0, 0), c2w(1, 0), c2w(2, 0)};
    const Vec3 up{-c2w(0, 1), -c2w(1, 1), -c2w(2, 1)};
    const Vec3 backward{-c2w(0, 2), -c2w(1, 2), -c2w(2, 2)};
    const double m[16] = {right.x, up.x, backward.x, eye.x,
                          right.y, up.y, backward.y, eye.y,
                          right.z, up.z, backward.z, eye.z,
                          0,       0,    0,          1};
    for (int r = 0; r < 4; ++r)
      out << m[4 * r] << " " << m[4 * r + 1] << " " << m[4 * r + 2] << " "
          << m[4 * r + 3] << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace recap
