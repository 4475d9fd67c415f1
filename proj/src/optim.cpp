// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/optim.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace recap {

// ---- Gaussian window ---------------------------------------------------------

namespace {

constexpr int kWindow = 11;
constexpr int kHalf = kWindow / 2;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

const std::array<double, kWindow>& gaussian_kernel() {
  static const std::array<double, kWindow> kernel = [] {
    std::array<double, kWindow> k{};
    const double sigma = 1.5;
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
      const double d = i - kHalf;
      k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
      sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
  }();
  return kernel;
}

// Separable blur with border renormalization: constants are preserved exactly.
Image3 blur(const Image3& in) {
  const auto& k = gaussian_kernel();
  Image3 tmp(in.width, in.height), out(in.width, in.height);
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) {
      Rgb acc{0, 0, 0};
      double w = 0.0;
      for (int d = -kHalf; d <= kHalf; ++d) {
        const int xx = x + d;
        if (xx < 0 || xx >= in.width) continue;
        acc += in.at(xx, y) * k[d + kHalf];
        w += k[d + kHalf];
      }
      tmp.at(x, y) = acc / w;
    }
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) {
      Rgb acc{0, 0, 0};
      double w = 0.0;
      for (int d = -kHalf; d <= kHalf; ++d) {
        const int yy = y + d;
        if (yy < 0 || yy >= in.height) continue;
        acc += tmp.at(x, yy) * k[d + kHalf];
        w += k[d + kHalf];
      }
      out.at(x, y) = acc / w;
    }
  return out;
}

// Adjoint of blur(): scale by the inverse border weight, then correlate with
// the (symmetric) kernel without renormalization, passes in reverse order.
Image3 blur_adjoint(const Image3& g) {
  const auto& k = gaussian_kernel();
  auto pass = [&](const Image3& in, bool horizontal) {
    const int limit = horizontal ? in.width : in.height;
    Image3 scaled(in.width, in.height), out(in.width, in.height);
    for (int y = 0; y < in.height; ++y)
      for (int x = 0; x < in.width; ++x) {
        const int c = horizontal ? x : y;
        double w = 0.0;
        for (int d = -kHalf; d <= kHalf; ++d)
          if (c + d >= 0 && c + d < limit) w += k[d + kHalf];
        scaled.at(x, y) = in.at(x, y) / w;
      }
    for (int y = 0; y < in.height; ++y)
      for (int x = 0; x < in.width; ++x) {
        Rgb acc{0, 0, 0};
        for (int d = -kHalf; d <= kHalf; ++d) {
          const int xx = horizontal ? x + d : x;
          const int yy = horizontal ? y : y + d;
          if (xx < 0 || xx >= in.width || yy < 0 || yy >= in.height) continue;
          acc += scaled.at(xx, yy) * k[d + kHalf];
        }
        out.at(x, y) = acc;
      }
    return out;
  };
  return pass(pass(g, false), true);  // vertical adjoint first, then horizontal
}

void check_same_shape(const Image3& a, const Image3& b, const char* who) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument(std::string(who) + ": image shapes differ");
}

struct SsimMaps {
  Image3 s;                    // per-pixel SSIM
  Image3 mu_x, mu_y;
  Image3 g1, g2, g3;           // dS/dmu_x, dS/dsigma_x2, dS/dsigma_xy
};

SsimMaps ssim_maps(const Image3& x, const Image3& y) {
  const int w = x.width, h = x.height;
  SsimMaps m{Image3(w, h), blur(x), blur(y), Image3(w, h), Image3(w, h), Image3(w, h)};

  Image3 xx(w, h), yy(w, h), xy(w, h);
  for (size_t i = 0; i < x.size(); ++i) {
    xx.pixels[i] = x.pixels[i] * x.pixels[i];
    yy.pixels[i] = y.pixels[i] * y.pixels[i];
    xy.pixels[i] = x.pixels[i] * y.pixels[i];
  }
  const Image3 bxx = blur(xx), byy = blur(yy), bxy = blur(xy);

  for (size_t i = 0; i < x.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const double mx = m.mu_x.pixels[i][c], my = m.mu_y.pixels[i][c];
      const double sx2 = bxx.pixels[i][c] - mx * mx;
      const double sy2 = byy.pixels[i][c] - my * my;
      const double sxy = bxy.pixels[i][c] - mx * my;
      const double a1 = 2 * mx * my + kSsimC1, b1 = mx * mx + my * my + kSsimC1;
      const double a2 = 2 * sxy + kSsimC2, b2 = sx2 + sy2 + kSsimC2;
      const double p = a1 / b1, q = a2 / b2;
      m.s.pixels[i][c] = p * q;
      m.g1.pixels[i][c] = q * (2 * my * b1 - 2 * mx * a1) / (b1 * b1);
      m.g2.pixels[i][c] = -p * a2 / (b2 * b2);
      m.g3.pixels[i][c] = p * 2.0 / b2;
    }
  }
  return m;
}

}  // namespace

double metrics_psnr(const Image3& a, const Image3& b) {
  check_same_shape(a, b, "metrics_psnr");
  double mse = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const Rgb d = a.pixels[i] - b.pixels[i];
    mse += dot(d, d);
  }
  mse /= 3.0 * a.size();
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double metrics_ssim(const Image3& a, const Image3& b) {
  check_same_shape(a, b, "metrics_ssim");
  const SsimMaps m = ssim_maps(a, b);
  double sum = 0.0;
  for (const Rgb& s : m.s.pixels) sum += s.x + s.y + s.z;
  return sum / (3.0 * a.size());
}

double image_loss(const Image3& rendered, const Image3& target) {
  check_same_shape(rendered, target, "image_loss");
  double l1 = 0.0;
  for (size_t i = 0; i < rendered.size(); ++i) {
    const Rgb d = rendered.pixels[i] - target.pixels[i];
    l1 += std::fabs(d.x) + std::fabs(d.y) + std::fabs(d.z);
  }
  l1 /= 3.0 * rendered.size();
  return 0.8 * l1 + 0.2 * (1.0 - metrics_ssim(rendered, target));
}

double image_loss_grad(const Image3& rendered, const Image3& target, Image3& d_rendered) {
  check_same_shape(rendered, target, "image_loss_grad");
  const size_t n = rendered.size();
  const double inv = 1.0 / (3.0 * n);
  d_rendered = Image3(rendered.width, rendered.height);

  double l1 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      const double d = rendered.pixels[i][c] - target.pixels[i][c];
      l1 += std::fabs(d);
      d_rendered.pixels[i][c] = 0.8 * inv * (d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0));
    }
  }
  l1 *= inv;

  const SsimMaps m = ssim_maps(rendered, target);
  double ssim_sum = 0.0;
  for (const Rgb& s : m.s.pixels) ssim_sum += s.x + s.y + s.z;
  const double ssim = ssim_sum * inv;

  // dSSIM/dx = B^T(g1) + 2x B^T(g2) - 2 B^T(g2 mu_x) + y B^T(g3) - B^T(g3 mu_y)
  Image3 g2mux(rendered.width, rendered.height), g3muy(rendered.width, rendered.height);
  for (size_t i = 0; i < n; ++i) {
    g2mux.pixels[i] = m.g2.pixels[i] * m.mu_x.pixels[i];
    g3muy.pixels[i] = m.g3.pixels[i] * m.mu_y.pixels[i];
  }
  const Image3 bt_g1 = blur_adjoint(m.g1);
  const Image3 bt_g2 = blur_adjoint(m.g2);
  const Image3 bt_g2mux = blur_adjoint(g2mux);
  const Image3 bt_g3 = blur_adjoint(m.g3);
  const Image3 bt_g3muy = blur_adjoint(g3muy);
  for (size_t i = 0; i < n; ++i) {
    const Rgb dssim = bt_g1.pixels[i] + bt_g2.pixels[i] * rendered.pixels[i] * 2.0 -
                      bt_g2mux.pixels[i] * 2.0 + bt_g3.pixels[i] * target.pixels[i] -
                      bt_g3muy.pixels[i];
    d_rendered.pixels[i] += dssim * (-0.2 * inv);
  }
  return 0.8 * l1 + 0.2 * (1.0 - ssim);
}

// ---- Adam -----------------------------------------------------------------------

void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state, double lr) {
  if (params.size() != grads.size())
    throw std::invalid_argument("adam_step: parameter/gradient size mismatch");
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size())
    throw std::invalid_argument("adam_step: state size mismatch");

  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  state.step += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    if (!std::isfinite(g))
      throw std::runtime_error("adam_step: non-finite gradient at index " +
                               std::to_string(i) + " (step " +
                               std::to_string(state.step) + ")");
    state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * g;
    state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * g * g;
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

// ---- Per-view loss + backward -----------------------------------------------------

ViewBackward view_loss_backward(const Scene& scene, const Camera& cam, const Image3& target,
                                const PrefilteredEnv& env, const BrdfLut& lut,
                                const FitConfig& cfg, int raw_size,
                                double cached_loss_dn) {
  const size_t n = scene.size();
  ViewBackward out;
  out.d_basecolor.assign(n, Rgb{0, 0, 0});
  out.d_tint.assign(n, Rgb{0, 0, 0});
  out.d_roughness.assign(n, 0.0);
  out.d_diffuse = CubeMap(env.diffuse.face_size);
  for (const SpecularLevel& level : env.specular)
    out.d_spec_levels.emplace_back(level.map.face_size);
  out.d_raw_specular_st = CubeMap(raw_size);

  const SplatData splats = prepare_splats(scene, cam);
  std::vector<ShadeDetail> details(n);
  std::vector<Rgb> colors(n, Rgb{0, 0, 0});
  for (int i : splats.order) {
    details[i] = shade_proposed_detail(scene[i].material, splats.normals[i],
                                       -splats.view_dirs[i], env, lut);
    colors[i] = details[i].color;
  }
  const RenderedImage img = composite(scene, cam, splats, colors, cfg.postprocess);

  Image3 d_color;
  out.loss_image = image_loss_grad(img.color, target, d_color);

  Image3 d_linear(cam.width, cam.height);
  for (size_t i = 0; i < d_linear.size(); ++i)
    d_linear.pixels[i] =
        d_color.pixels[i] * postprocess_derivative(img.linear.pixels[i], cfg.postprocess);

  const std::vector<Rgb> d_point_color = blend_backward(scene, cam, splats, d_linear);

  for (int i : splats.order) {
    const MaterialParams& mat = scene[i].material;
    const ShadeDetail& d = details[i];
    const Rgb& dc = d_point_color[i];
    const ShadeGrad sg = shade_proposed_backward(d, mat, dc);
    out.d_basecolor[i] += sg.d_basecolor;
    out.d_tint[i] += sg.d_tint;
    out.d_roughness[i] += sg.d_roughness;

    const Rgb d_ediff = dc * mat.basecolor;
    for (const CubeTap& tap : d.diff_taps)
      out.d_diffuse.at(tap.face, tap.x, tap.y) += d_ediff * tap.weight;

    const Rgb coeff = mat.specular_tint * d.beta1 + Rgb{d.beta2, d.beta2, d.beta2};
    const Rgb d_espec = dc * coeff;
    const SpecularQuery& q = d.spec_query;
    for (const CubeTap& tap : q.taps_lo)
      out.d_spec_levels[q.level_lo].at(tap.face, tap.x, tap.y) +=
          d_espec * (tap.weight * (1.0 - q.t));
    if (q.level_hi != q.level_lo)
      for (const CubeTap& tap : q.taps_hi)
        out.d_spec_levels[q.level_hi].at(tap.face, tap.x, tap.y) +=
            d_espec * (tap.weight * q.t);
    // Straight-through: the prefilter is treated as the identity at the
    // queried level, so the specular gradient lands on the raw texels under
    // the reflection direction.
    for (const CubeTap& tap : sample_taps(raw_size, d.reflection))
      out.d_raw_specular_st.at(tap.face, tap.x, tap.y) += d_espec * tap.weight;
  }

  // Material regularizers, averaged over points.
  const double inv_n = n > 0 ? 1.0 / double(n) : 0.0;
  for (size_t i = 0; i < n; ++i) {
    const MaterialParams& mat = scene[i].material;
    out.loss_sat += loss_sat(mat.specular_tint, cfg.lambda_sat) * inv_n;
    out.d_tint[i] += loss_sat_grad(mat.specular_tint, cfg.lambda_sat) * inv_n;
    out.loss_ec += loss_energy(mat.specular_tint, mat.basecolor, cfg.lambda_ec) * inv_n;
    Rgb d_s, d_b;
    loss_energy_grad(mat.specular_tint, mat.basecolor, cfg.lambda_ec, d_s, d_b);
    out.d_tint[i] += d_s * inv_n;
    out.d_basecolor[i] += d_b * inv_n;
  }

  out.loss_dn = cached_loss_dn >= 0.0 ? cached_loss_dn
                                      : loss_depth_normal(scene, cam, cfg.lambda_dn);
  out.loss_total = out.loss_image + out.loss_sat + out.loss_ec + out.loss_dn;
  return out;
}

// ---- Fit -----------------------------------------------------------------------

namespace {

void pack_materials(const Scene& scene, std::vector<double>& p) {
  p.resize(scene.size() * 7);
  for (size_t i = 0; i < scene.size(); ++i) {
    const MaterialParams& m = scene[i].material;
    double* q = &p[7 * i];
    q[0] = m.basecolor.x; q[1] = m.basecolor.y; q[2] = m.basecolor.z;
    q[3] = m.specular_tint.x; q[4] = m.specular_tint.y; q[5] = m.specular_tint.z;
    q[6] = m.roughness;
  }
}

void unpack_materials(const std::vector<double>& p, Scene& scene) {
  for (size_t i = 0; i < scene.size(); ++i) {
    MaterialParams& m = scene[i].material;
    const double* q = &p[7 * i];
    m.basecolor = {q[0], q[1], q[2]};
    m.specular_tint = {q[3], q[4], q[5]};
    m.roughness = q[6];
    m = clamp_material(m);
  }
}

void clamp_params_to_material_ranges(std::vector<double>& p) {
  for (double& v : p) v = std::clamp(v, 0.0, 1.0);
}

std::vector<double> pack_cubemap(const CubeMap& map) {
  std::vector<double> p;
  p.reserve(map.texel_count() * 3);
  for (const Rgb& t : map.texels) {
    p.push_back(t.x);
    p.push_back(t.y);
    p.push_back(t.z);
  }
  return p;
}

void unpack_cubemap(const std::vector<double>& p, CubeMap& map) {
  for (size_t i = 0; i < map.texel_count(); ++i)
    map.texels[i] = {std::max(0.0, p[3 * i]), std::max(0.0, p[3 * i + 1]),
                     std::max(0.0, p[3 * i + 2])};
}

}  // namespace

FitResult fit(const Scene& scene0, const TrainingSet& training, const FitConfig& cfg,
              const std::vector<CubeMap>& initial_envs) {
  const size_t k = training.environments.size();
  if (k < 1) throw std::invalid_argument("fit: need at least one environment");
  if (cfg.iterations <= 0) throw std::invalid_argument("fit: iterations must be positive");
  int tw = -1, th = -1;
  for (const EnvironmentViews& ev : training.environments) {
    if (ev.cameras.empty() || ev.cameras.size() != ev.targets.size())
      throw std::invalid_argument("fit: each environment needs matching cameras/targets");
    for (const Image3& t : ev.targets) {
      if (tw < 0) { tw = t.width; th = t.height; }
      if (t.width != tw || t.height != th)
        throw std::invalid_argument("fit: all targets must share one resolution");
    }
  }
  if (!initial_envs.empty() && initial_envs.size() != k)
    throw std::invalid_argument("fit: initial_envs count must match environment count");

  FitResult result;
  result.scene = scene0;
  result.envs.clear();
  for (size_t e = 0; e < k; ++e)
    result.envs.push_back(initial_envs.empty() ? CubeMap(cfg.env_size, {0.5, 0.5, 0.5})
                                               : initial_envs[e]);

  const BrdfLut lut = integrate_brdf_lut(cfg.lut_resolution, cfg.lut_samples,
                                         static_cast<uint32_t>(cfg.seed));

  std::vector<PrefilteredEnv> prefiltered(k);
  std::vector<int> updates_since_refresh(k, 0);
  std::vector<bool> fresh(k, false);
  auto refresh = [&](size_t e) {
    const CubeMap& raw = result.envs[e];
    prefiltered[e].diffuse =
        prefilter_diffuse(raw, std::min(cfg.diffuse_size, raw.face_size) >= 4
                                   ? std::min(cfg.diffuse_size, raw.face_size)
                                   : 4);
    prefiltered[e].specular = prefilter_specular(
        raw, default_specular_levels(raw.face_size), cfg.prefilter_samples);
    updates_since_refresh[e] = 0;
    fresh[e] = true;
  };

  std::vector<double> mat_params;
  pack_materials(result.scene, mat_params);
  AdamState mat_state;
  std::vector<std::vector<double>> env_params(k);
  std::vector<AdamState> env_states(k);
  for (size_t e = 0; e < k; ++e) env_params[e] = pack_cubemap(result.envs[e]);

  // Geometry is fixed, so the depth-normal term is constant per camera.
  std::vector<std::vector<double>> dn_cache(k);
  for (size_t e = 0; e < k; ++e)
    dn_cache[e].assign(training.environments[e].cameras.size(), -1.0);

  result.history.reserve(cfg.iterations);
  for (int t = 0; t < cfg.iterations; ++t) {
    const size_t e = static_cast<size_t>(t) % k;
    const EnvironmentViews& ev = training.environments[e];
    const size_t view = (static_cast<size_t>(t) / k) % ev.cameras.size();

    if (!fresh[e] || updates_since_refresh[e] >= cfg.prefilter_cadence) refresh(e);

    if (dn_cache[e][view] < 0.0)
      dn_cache[e][view] = loss_depth_normal(result.scene, ev.cameras[view], cfg.lambda_dn);

    ViewBackward back =
        view_loss_backward(result.scene, ev.cameras[view], ev.targets[view], prefiltered[e],
                           lut, cfg, result.envs[e].face_size, dn_cache[e][view]);
    if (!std::isfinite(back.loss_total)) {
      std::ostringstream msg;
      msg << "fit: loss diverged at iteration " << t << " (env " << e << ", view " << view
          << "): image=" << back.loss_image << " sat=" << back.loss_sat
          << " ec=" << back.loss_ec << " dn=" << back.loss_dn;
      throw std::runtime_error(msg.str());
    }
    result.history.push_back(
        {t, back.loss_image, back.loss_sat, back.loss_ec, back.loss_dn, back.loss_total});

    if (cfg.optimize_materials) {
      std::vector<double> grads(mat_params.size());
      for (size_t i = 0; i < result.scene.size(); ++i) {
        double* g = &grads[7 * i];
        g[0] = back.d_basecolor[i].x; g[1] = back.d_basecolor[i].y; g[2] = back.d_basecolor[i].z;
        g[3] = back.d_tint[i].x; g[4] = back.d_tint[i].y; g[5] = back.d_tint[i].z;
        g[6] = back.d_roughness[i];
      }
      adam_step(mat_params, grads, mat_state, cfg.lr_material);
      clamp_params_to_material_ranges(mat_params);
      unpack_materials(mat_params, result.scene);
    }

    if (cfg.optimize_envs) {
      const CubeMap d_diffuse_raw =
          diffuse_prefilter_adjoint(back.d_diffuse, result.envs[e].face_size);
      std::vector<double> grads(env_params[e].size());
      for (size_t i = 0; i < result.envs[e].texel_count(); ++i) {
        const Rgb g = d_diffuse_raw.texels[i] + back.d_raw_specular_st.texels[i];
        grads[3 * i] = g.x;
        grads[3 * i + 1] = g.y;
        grads[3 * i + 2] = g.z;
      }
      adam_step(env_params[e], grads, env_states[e], cfg.lr_env);
      for (double& v : env_params[e]) v = std::max(v, 0.0);
      unpack_cubemap(env_params[e], result.envs[e]);
      updates_since_refresh[e] += 1;
      if (updates_since_refresh[e] >= cfg.prefilter_cadence) fresh[e] = false;
    }
  }

  // Final per-environment metrics with freshly prefiltered lighting.
  for (size_t e = 0; e < k; ++e) {
    refresh(e);
    const EnvironmentViews& ev = training.environments[e];
    EnvMetrics m;
    for (size_t v = 0; v < ev.cameras.size(); ++v) {
      const RenderedImage img =
          render(result.scene, ev.cameras[v], prefiltered[e], lut, cfg.postprocess);
      m.psnr += metrics_psnr(img.color, ev.targets[v]);
      m.ssim += metrics_ssim(img.color, ev.targets[v]);
    }
    m.psnr /= ev.cameras.size();
    m.ssim /= ev.cameras.size();
    result.metrics.push_back(m);
  }
  return result;
}

RenderedImage relight(const Scene& scene, const LatLongImage& hdr, const Camera& cam,
                      const PostProcessConfig& cfg, int env_size, int prefilter_samples) {
  const CubeMap cube = preprocess_hdr_for_config(latlong_to_cube(hdr, env_size), cfg);
  const PrefilteredEnv env = build_prefiltered_env(cube, prefilter_samples);
  static const BrdfLut lut = integrate_brdf_lut(64, 1024);
  return render(scene, cam, env, lut, cfg);
}

std::vector<AblationRow> ablate_postprocess(const AblationFixture& fixture,
                                            const std::vector<PostProcessConfig>& configs,
                                            const FitConfig& base_cfg) {
  if (fixture.training.environments.size() < 2)
    throw std::invalid_argument("ablate_postprocess: fixture needs >= 2 training envs");
  if (fixture.holdout_cams.size() != fixture.holdout_targets.size())
    throw std::invalid_argument("ablate_postprocess: holdout cameras/targets mismatch");

  std::vector<AblationRow> rows;
  for (const PostProcessConfig& config : configs) {
    FitConfig cfg = base_cfg;
    cfg.postprocess = config;
    const FitResult res = fit(fixture.scene, fixture.training, cfg);

    AblationRow row;
    row.config = config;
    for (size_t v = 0; v < fixture.holdout_cams.size(); ++v) {
      const RenderedImage img =
          relight(res.scene, fixture.holdout_hdr, fixture.holdout_cams[v], config,
                  cfg.env_size, std::max(cfg.prefilter_samples, 128));
      row.relight_psnr += metrics_psnr(img.color, fixture.holdout_targets[v]);
    }
    row.relight_psnr /= fixture.holdout_cams.size();
    for (const EnvMetrics& m : res.metrics) row.nvs_psnr += m.psnr;
    row.nvs_psnr /= res.metrics.size();
    rows.push_back(row);
  }
  return rows;
}

// ---- CSV ------------------------------------------------------------------------

namespace {
std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}
}  // namespace

std::string loss_history_csv(const std::vector<LossRecord>& history) {
  std::string out = "iteration,term,value\n";
  for (const LossRecord& r : history) {
    out += std::to_string(r.iteration) + ",image," + fmt_double(r.image) + "\n";
    out += std::to_string(r.iteration) + ",sat," + fmt_double(r.sat) + "\n";
    out += std::to_string(r.iteration) + ",ec," + fmt_double(r.ec) + "\n";
    out += std::to_string(r.iteration) + ",dn," + fmt_double(r.dn) + "\n";
    out += std::to_string(r.iteration) + ",total," + fmt_double(r.total) + "\n";
  }
  return out;
}

std::string metrics_csv(const std::vector<EnvMetrics>& metrics) {
  std::string out = "environment,psnr,ssim\n";
  for (size_t e = 0; e < metrics.size(); ++e)
    out += std::to_string(e) + "," + fmt_double(metrics[e].psnr) + "," +
           fmt_double(metrics[e].ssim) + "\n";
  return out;
}

}  // namespace recap
