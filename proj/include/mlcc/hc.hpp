#pragma once

#include <cstdint>
#include <vector>

#include "mlcc/model.hpp"

namespace mlcc {

// One agglomeration step. `a < b` are ids of the merged clusters; originals
// are 0..n-1 and the cluster formed by merge m gets id n+m.
struct HcMerge {
  int32_t a = 0;
  int32_t b = 0;
  double distance = 0.0;
};

struct HcTree {
  int64_t n = 0;
  std::vector<HcMerge> merges;  // n-1 entries, nondecreasing distance
};

// Agglomerative single-linkage clustering on Euclidean distances.
// Ties pick the lexicographically smallest (a, b) pair.
HcTree single_linkage(const Dataset& dataset);

// Labels for the k-cluster partition obtained by undoing the last k-1 merges.
// Labels are 0..k-1 in order of first appearance by example index.
std::vector<int32_t> cut(const HcTree& tree, int32_t k);

}  // namespace mlcc
