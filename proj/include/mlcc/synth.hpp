#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mlcc/model.hpp"
#include "mlcc/rng.hpp"

namespace mlcc {

struct SynthConfig {
  uint64_t seed = 1;
  double noise_fraction = 0.1;  // share of each component redrawn as noise
  int32_t component_size = 100;
  double inflation = 5.0;  // variance multiplier applied to noise points
};

// Shape parameters of one mixture component. Which fields matter depends on
// the component kind (see generate): 1 isotropic normal, 2 axis-aligned
// normal, 3 sheared normal, 4 circle, 5 half-circle arc.
struct ComponentParams {
  double cx = 0.0, cy = 0.0;
  double sigma_x = 0.0, sigma_y = 0.0;
  double shear = 0.0;
  double radius = 0.0, sigma_r = 0.0;
  double arc_start = 0.0;
};

struct SynthParams {
  std::array<ComponentParams, 5> components;
};

struct SynthSample {
  std::vector<double> points;  // flat row-major, d = 2
  std::vector<int32_t> component;  // 1..5
  std::vector<uint8_t> is_noise;
  int64_t size() const { return static_cast<int64_t>(component.size()); }
};

// Draws component placements and shapes from documented ranges; consumes the
// generator in a fixed order so samples are reproducible bit for bit.
SynthParams draw_params(Rng& rng);

SynthSample generate(const SynthConfig& config);

// Labels are the component ids ("1".."5") under the name "component".
Dataset to_dataset(const SynthSample& sample);

// The 15 standard configs: seeds 1..5 crossed with noise {1/10, 1/5, 1/3}.
std::vector<SynthConfig> experiment_grid();

}  // namespace mlcc
