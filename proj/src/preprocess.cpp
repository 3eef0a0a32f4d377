#include "mlcc/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace mlcc {

RescaleParams fit_rescale(const Dataset& dataset, double scale) {
  if (dataset.size() == 0) fail(errc::empty_input, "cannot fit rescale parameters on an empty dataset");
  if (!(scale > 0.0)) fail(errc::invalid_argument, "scale must be positive");
  const int d = static_cast<int>(dataset.dim());
  RescaleParams params;
  params.scale = scale;
  params.min.assign(dataset.point(0).begin(), dataset.point(0).end());
  params.max = params.min;
  for (int64_t i = 1; i < dataset.size(); ++i) {
    const auto x = dataset.point(i);
    for (int a = 0; a < d; ++a) {
      params.min[a] = std::min(params.min[a], x[a]);
      params.max[a] = std::max(params.max[a], x[a]);
    }
  }
  return params;
}

std::vector<double> apply_rescale(const RescaleParams& params, std::span<const double> x) {
  if (x.size() != params.min.size()) fail(errc::shape_mismatch, "rescale dimensionality mismatch");
  std::vector<double> out(x.size());
  for (size_t a = 0; a < x.size(); ++a) {
    const double range = params.max[a] - params.min[a];
    // A constant feature carries no information; collapse it to 0.
    out[a] = range > 0.0 ? params.scale * (x[a] - params.min[a]) / range : 0.0;
  }
  return out;
}

Dataset apply_rescale(const RescaleParams& params, const Dataset& dataset) {
  if (dataset.dim() != params.dim()) fail(errc::shape_mismatch, "rescale dimensionality mismatch");
  std::vector<double> flat;
  flat.reserve(dataset.raw().size());
  for (int64_t i = 0; i < dataset.size(); ++i) {
    const auto scaled = apply_rescale(params, dataset.point(i));
    flat.insert(flat.end(), scaled.begin(), scaled.end());
  }
  Dataset out(std::move(flat), dataset.dim());
  if (dataset.has_labels()) out.set_labels(dataset.labels(), dataset.label_name());
  if (dataset.has_noise_flags()) out.set_noise_flags(dataset.noise_flags());
  return out;
}

double default_scale(int d) {
  if (d < 1) fail(errc::out_of_range, "dimensionality must be >= 1");
  if (d == 2) return 50.0;
  if (d == 3) return 20.0;
  return std::max(1.0, static_cast<double>(std::llround(100.0 / d)));
}

}  // namespace mlcc
