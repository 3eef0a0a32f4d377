#pragma once

#include <span>
#include <vector>

#include "mlcc/errors.hpp"

namespace mlcc {

// Configuration of the kNN sum-of-distances nonconformity measure. The
// metric is Euclidean in v1; the interface leaves room for alternatives.
struct NcmConfig {
  int32_t k = 5;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Ascending sum of the k smallest values. Mutates the buffer. All callers
// (single queries, the full-field evaluation and the test oracles) must sum
// in ascending order so that equal inputs give bit-identical scores.
double sum_k_smallest(std::vector<double>& values, int32_t k);

// Sum of Euclidean distances from z to its k nearest points in the bag.
// z itself must not be a member of the bag; the caller excludes it.
double knn_sum_ncm(const std::vector<std::vector<double>>& bag, std::span<const double> z,
                   const NcmConfig& config);

}  // namespace mlcc
