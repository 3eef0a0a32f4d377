#include "mlcc/synth.hpp"

#include <cmath>
#include <string>

#include "mlcc/errors.hpp"

namespace mlcc {

namespace {

// Placement ranges. Centers land in a square box with a minimum pairwise
// separation so components stay visually distinct at low noise; shape ranges
// keep each component's bulk within roughly two separation radii.
constexpr double kBoxLo = 0.0;
constexpr double kBoxHi = 20.0;
constexpr double kMinSeparation = 7.5;
constexpr double kIsoSigmaLo = 0.35, kIsoSigmaHi = 0.55;
constexpr double kAnisoXLo = 0.3, kAnisoXHi = 0.45;
constexpr double kAnisoYLo = 0.8, kAnisoYHi = 1.1;
constexpr double kShearSigmaLo = 0.4, kShearSigmaHi = 0.55;
constexpr double kShearLo = 0.6, kShearHi = 1.1;
constexpr double kRadiusLo = 2.0, kRadiusHi = 2.6;
constexpr double kRadialSigmaLo = 0.25, kRadialSigmaHi = 0.40;
constexpr int kMaxPlacementTries = 100000;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

SynthParams draw_params(Rng& rng) {
  SynthParams params;

  for (size_t c = 0; c < params.components.size(); ++c) {
    int tries = 0;
    for (;;) {
      if (++tries > kMaxPlacementTries)
        fail(errc::invalid_argument, "could not place separated component centers");
      const double cx = rng.uniform(kBoxLo, kBoxHi);
      const double cy = rng.uniform(kBoxLo, kBoxHi);
      bool ok = true;
      for (size_t o = 0; o < c; ++o) {
        const double dx = cx - params.components[o].cx;
        const double dy = cy - params.components[o].cy;
        if (std::sqrt(dx * dx + dy * dy) < kMinSeparation) {
          ok = false;
          break;
        }
      }
      if (ok) {
        params.components[c].cx = cx;
        params.components[c].cy = cy;
        break;
      }
    }
  }

  ComponentParams& iso = params.components[0];
  iso.sigma_x = iso.sigma_y = rng.uniform(kIsoSigmaLo, kIsoSigmaHi);

  ComponentParams& aniso = params.components[1];
  aniso.sigma_x = rng.uniform(kAnisoXLo, kAnisoXHi);
  aniso.sigma_y = rng.uniform(kAnisoYLo, kAnisoYHi);

  ComponentParams& sheared = params.components[2];
  sheared.sigma_x = sheared.sigma_y = rng.uniform(kShearSigmaLo, kShearSigmaHi);
  sheared.shear = rng.uniform(kShearLo, kShearHi);
  if (rng.uniform() < 0.5) sheared.shear = -sheared.shear;

  ComponentParams& circle = params.components[3];
  circle.radius = rng.uniform(kRadiusLo, kRadiusHi);
  circle.sigma_r = rng.uniform(kRadialSigmaLo, kRadialSigmaHi);

  ComponentParams& arc = params.components[4];
  arc.radius = rng.uniform(kRadiusLo, kRadiusHi);
  arc.sigma_r = rng.uniform(kRadialSigmaLo, kRadialSigmaHi);
  arc.arc_start = rng.uniform(0.0, 2.0 * kPi);

  return params;
}

namespace {

void draw_point(Rng& rng, int component, const ComponentParams& p, double spread,
                double& x, double& y) {
  switch (component) {
    case 1:
    case 2: {
      x = p.cx + rng.normal(0.0, p.sigma_x * spread);
      y = p.cy + rng.normal(0.0, p.sigma_y * spread);
      return;
    }
    case 3: {
      const double u = rng.normal(0.0, p.sigma_x * spread);
      const double v = rng.normal(0.0, p.sigma_y * spread);
      x = p.cx + u + p.shear * v;
      y = p.cy + v;
      return;
    }
    case 4: {
      const double theta = rng.uniform(0.0, 2.0 * kPi);
      const double r = rng.normal(p.radius, p.sigma_r * spread);
      x = p.cx + r * std::cos(theta);
      y = p.cy + r * std::sin(theta);
      return;
    }
    case 5: {
      const double theta = rng.uniform(p.arc_start, p.arc_start + kPi);
      const double r = rng.normal(p.radius, p.sigma_r * spread);
      x = p.cx + r * std::cos(theta);
      y = p.cy + r * std::sin(theta);
      return;
    }
    default:
      fail(errc::invalid_argument, "unknown component kind");
  }
}

}  // namespace

SynthSample generate(const SynthConfig& config) {
  if (!(config.noise_fraction > 0.0) || !(config.noise_fraction < 1.0))
    fail(errc::invalid_argument, "noise fraction must be in (0, 1)");
  if (config.component_size < 1)
    fail(errc::invalid_argument, "component size must be >= 1");
  if (!(config.inflation > 1.0))
    fail(errc::invalid_argument, "variance inflation must exceed 1");

  Rng rng(config.seed);
  const SynthParams params = draw_params(rng);
  const double spread = std::sqrt(config.inflation);

  const auto noise_count =
      static_cast<int32_t>(std::llround(config.noise_fraction * config.component_size));
  const int32_t normal_count = config.component_size - noise_count;

  SynthSample sample;
  const int64_t total = int64_t{5} * config.component_size;
  sample.points.reserve(2 * total);
  sample.component.reserve(total);
  sample.is_noise.reserve(total);

  for (int c = 1; c <= 5; ++c) {
    const ComponentParams& p = params.components[c - 1];
    for (int32_t i = 0; i < config.component_size; ++i) {
      const bool noise = i >= normal_count;
      double x = 0.0, y = 0.0;
      draw_point(rng, c, p, noise ? spread : 1.0, x, y);
      sample.points.push_back(x);
      sample.points.push_back(y);
      sample.component.push_back(c);
      sample.is_noise.push_back(noise ? 1 : 0);
    }
  }
  return sample;
}

Dataset to_dataset(const SynthSample& sample) {
  std::vector<std::string> labels;
  labels.reserve(sample.component.size());
  for (int32_t c : sample.component) labels.push_back(std::to_string(c));
  Dataset dataset(sample.points, 2);
  dataset.set_labels(std::move(labels), "component");
  dataset.set_noise_flags(sample.is_noise);
  return dataset;
}

std::vector<SynthConfig> experiment_grid() {
  std::vector<SynthConfig> grid;
  grid.reserve(15);
  for (uint64_t seed = 1; seed <= 5; ++seed)
    for (double noise : {1.0 / 10.0, 1.0 / 5.0, 1.0 / 3.0})
      grid.push_back({seed, noise, 100, 5.0});
  return grid;
}

}  // namespace mlcc
