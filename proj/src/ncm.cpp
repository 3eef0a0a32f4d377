#include "mlcc/ncm.hpp"

#include <algorithm>
#include <cmath>

namespace mlcc {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(errc::shape_mismatch, "distance between vectors of different length");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double sum_k_smallest(std::vector<double>& values, int32_t k) {
  std::partial_sort(values.begin(), values.begin() + k, values.end());
  double s = 0.0;
  for (int32_t i = 0; i < k; ++i) s += values[i];
  return s;
}

double knn_sum_ncm(const std::vector<std::vector<double>>& bag, std::span<const double> z,
                   const NcmConfig& config) {
  if (config.k < 1) fail(errc::invalid_argument, "neighbor count k must be >= 1");
  if (static_cast<int64_t>(bag.size()) < config.k)
    fail(errc::insufficient_data, "bag smaller than the neighbor count k");
  std::vector<double> dists;
  dists.reserve(bag.size());
  for (const auto& b : bag) dists.push_back(euclidean_distance(b, z));
  return sum_k_smallest(dists, config.k);
}

}  // namespace mlcc
