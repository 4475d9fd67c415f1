// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recap/brdf.hpp"
#include "recap/image.hpp"
#include "recap/prefilter.hpp"
#include "recap/shading.hpp"
#include "recap/splat.hpp"

namespace recap {

// ---- Image metrics --------------------------------------------------------

// 10 log10(1 / MSE) over all pixels and channels; +inf for identical images.
double metrics_psnr(const Image3& a, const Image3& b);

// Mean SSIM, 11x11 Gaussian window (sigma 1.5), standard stabilizers for
// unit-range data. Window weights are renormalized at the image border.
double metrics_ssim(const Image3& a, const Image3& b);

// 0.8 * mean|a-b| + 0.2 * (1 - SSIM(a, b)).
double image_loss(const Image3& rendered, const Image3& target);

// Loss plus its gradient with respect to `rendered`.
double image_loss_grad(const Image3& rendered, const Image3& target, Image3& d_rendered);

// ---- Adam -------------------------------------------------------------------

struct AdamState {
  std::vector<double> m, v;
  int64_t step = 0;
};

// Standard Adam update, beta = (0.9, 0.999), eps = 1e-8, bias-corrected.
// Throws on non-finite gradients (with the offending index in the message).
void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state, double lr);

// ---- Training ----------------------------------------------------------------

struct EnvironmentViews {
  std::vector<Camera> cameras;
  std::vector<Image3> targets;  // in [0,1], post-processed captures
};

// k capture sets, one per (unknown) lighting condition.
struct TrainingSet {
  std::vector<EnvironmentViews> environments;
};

struct FitConfig {
  int iterations = 1000;
  double lr_material = 0.01;
  double lr_env = 0.05;
  double lambda_sat = 0.01;
  double lambda_ec = 0.01;
  double lambda_dn = 0.01;
  PostProcessConfig postprocess;
  int prefilter_cadence = 8;  // raw-texel updates between prefilter refreshes
  uint64_t seed = 0;
  int env_size = 32;          // learnable cube map face size
  int diffuse_size = 16;
  int prefilter_samples = 128;
  int lut_resolution = 64;
  int lut_samples = 1024;
  bool optimize_materials = true;
  bool optimize_envs = true;
};

struct LossRecord {
  int iteration = 0;
  double image = 0, sat = 0, ec = 0, dn = 0, total = 0;
};

struct EnvMetrics {
  double psnr = 0, ssim = 0;
};

struct FitResult {
  Scene scene;                     // fitted materials, original geometry
  std::vector<CubeMap> envs;       // k fitted raw environment maps
  std::vector<LossRecord> history; // one record per iteration
  std::vector<EnvMetrics> metrics; // per environment, averaged over its views
};

// Losses and analytic gradients for a single training view against a fixed
// prefiltered environment. Environment gradients come in two forms: exact
// gradients on the prefiltered texels (diffuse map and specular levels), and
// the straight-through specular gradient re-expressed on a raw map of size
// raw_size. The caller chains d_diffuse through the diffuse prefilter
// adjoint, which is exact.
struct ViewBackward {
  double loss_total = 0, loss_image = 0, loss_sat = 0, loss_ec = 0, loss_dn = 0;
  std::vector<Rgb> d_basecolor, d_tint;
  std::vector<double> d_roughness;
  CubeMap d_diffuse;
  std::vector<CubeMap> d_spec_levels;
  CubeMap d_raw_specular_st;
};

ViewBackward view_loss_backward(const Scene& scene, const Camera& cam, const Image3& target,
                                const PrefilteredEnv& env, const BrdfLut& lut,
                                const FitConfig& cfg, int raw_size,
                                double cached_loss_dn = -1.0);

// Joint fit of shared per-point materials and k independent environment maps.
// Each iteration consumes one (environment, view) pair round-robin; gradients
// touch the shared materials and the sampled environment's texels only.
// initial_envs, when given, must have training.environments.size() entries
// (used as starting values; also the fixed lighting when optimize_envs is
// false). Deterministic for a fixed config.
FitResult fit(const Scene& scene, const TrainingSet& training, const FitConfig& cfg,
              const std::vector<CubeMap>& initial_envs = {});

// Relight a fitted scene under a standard HDR map: convert to a cube map,
// adapt it to the config's interpretation, prefilter, render. The default
// config is the physical one (nonnegative range, clip, gamma), under which
// the HDR map is used without modification.
RenderedImage relight(const Scene& scene, const LatLongImage& hdr, const Camera& cam,
                      const PostProcessConfig& cfg = {}, int env_size = 64,
                      int prefilter_samples = 256);

// ---- Post-processing ablation -------------------------------------------------

struct AblationFixture {
  Scene scene;
  TrainingSet training;
  LatLongImage holdout_hdr;
  std::vector<Camera> holdout_cams;
  std::vector<Image3> holdout_targets;  // ground-truth relights, physical pipeline
};

struct AblationRow {
  PostProcessConfig config;
  double relight_psnr = 0;
  double nvs_psnr = 0;
};

// Runs fit + relight once per configuration and reports PSNR for the held-out
// environment (relight) and the training views (NVS).
std::vector<AblationRow> ablate_postprocess(const AblationFixture& fixture,
                                            const std::vector<PostProcessConfig>& configs,
                                            const FitConfig& base_cfg);

// ---- CSV artifacts --------------------------------------------------------------

std::string loss_history_csv(const std::vector<LossRecord>& history);
std::string metrics_csv(const std::vector<EnvMetrics>& metrics);

}  // namespace recap
