#pragma once

#include <span>
#include <vector>

#include "mlcc/model.hpp"

namespace mlcc {

// Per-feature min/max recorded on a training set, plus the target scale S.
// Rescaling maps each feature affinely onto [0, S]; a constant feature
// collapses to 0.
struct RescaleParams {
  std::vector<double> min;
  std::vector<double> max;
  double scale = 0.0;

  int dim() const noexcept { return static_cast<int>(min.size()); }
};

RescaleParams fit_rescale(const Dataset& dataset, double scale);

std::vector<double> apply_rescale(const RescaleParams& params, std::span<const double> x);

// Rescales every point; labels and noise flags carry over unchanged.
Dataset apply_rescale(const RescaleParams& params, const Dataset& dataset);

// Scale for a given dimensionality: 50 for d=2, 20 for d=3, otherwise
// round(100/d) (floored at 1).
double default_scale(int d);

}  // namespace mlcc
