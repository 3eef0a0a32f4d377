#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mlcc/model.hpp"
#include "mlcc/region.hpp"

namespace mlcc {

// All attainable p-value thresholds {k/(l+1) : k = 1..l}. Finer ladders add
// no information because p-values are integer multiples of 1/(l+1); stride
// subsamples for speed (every stride-th threshold, always keeping the first).
EpsilonLadder default_ladder(int64_t l, int stride = 1);

// One virtual cluster at one ladder level. id is canonical within the level;
// parent is the containing cluster's id at the previous level (-1 at the
// first level).
struct TreeCluster {
  int32_t id = 0;
  int32_t parent = -1;
  int64_t node_count = 0;
};

struct TreeLevel {
  double eps = 0.0;
  std::vector<TreeCluster> clusters;
  std::vector<int32_t> node_label;  // per lattice node, -1 outside the region
};

// A cluster at `level - 1` separated into >= 2 components at `level`.
struct SplitEvent {
  int32_t level = 0;
  int32_t parent = 0;
};

// A cluster at `level - 1` whose node set is empty at `level`.
struct DeathEvent {
  int32_t level = 0;
  int32_t cluster = 0;
};

// The multi-level cluster tree: regions and components per ladder level with
// parent links, split events and death events. Node sets nest along parent
// links because regions shrink as the level rises.
struct ClusterTree {
  Lattice lattice;
  EpsilonLadder ladder;
  std::vector<TreeLevel> levels;
  std::vector<SplitEvent> splits;
  std::vector<DeathEvent> deaths;
};

ClusterTree build_tree(const PValueField& field, const EpsilonLadder& ladder,
                       Adjacency adjacency = Adjacency::moore);

inline constexpr int32_t kAnomaly = -1;

// Per example: the containing cluster's id at every ladder level (kAnomaly
// once its node leaves the region, which is permanent), and the first level
// index at which that happens (== level count when it never does).
struct PointTrajectory {
  std::vector<int32_t> cluster_by_level;
  int32_t death_level = 0;
};

std::vector<PointTrajectory> trajectories(const Dataset& dataset, const ClusterTree& tree);

struct SplitMarker {
  int32_t level = 0;
  double eps = 0.0;
  int32_t parent = 0;  // cluster id at level - 1
};

// Dendrogram layout: a permutation of example indices such that every
// cluster's examples occupy one contiguous run at every level. Sibling
// sub-clusters go left to right by descending example count; a cluster's own
// examples that die before its split trail on the right, longest-surviving
// first.
struct Dendrogram {
  std::vector<int32_t> leaf_order;
  std::vector<int32_t> death_level;  // per example, == num_levels when it never dies
  std::vector<SplitMarker> splits;
  int32_t num_levels = 0;
};

Dendrogram leaf_order(const std::vector<PointTrajectory>& trajectories, const ClusterTree& tree);

// Number of virtual clusters per ladder level.
std::vector<std::pair<double, int32_t>> cluster_counts(const ClusterTree& tree);

}  // namespace mlcc
