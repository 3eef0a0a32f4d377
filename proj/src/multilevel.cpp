#include "mlcc/multilevel.hpp"

#include <algorithm>
#include <numeric>

namespace mlcc {

EpsilonLadder default_ladder(int64_t l, int stride) {
  if (l < 1) fail(errc::invalid_argument, "need at least one example");
  if (stride < 1) fail(errc::invalid_argument, "ladder stride must be >= 1");
  std::vector<double> levels;
  levels.reserve((l + stride - 1) / stride);
  for (int64_t k = 1; k <= l; k += stride) levels.push_back(k / static_cast<double>(l + 1));
  return EpsilonLadder(std::move(levels));
}

ClusterTree build_tree(const PValueField& field, const EpsilonLadder& ladder,
                       Adjacency adjacency) {
  ClusterTree tree{field.lattice(), ladder, {}, {}, {}};
  const size_t w = ladder.size();
  tree.levels.reserve(w);

  for (size_t t = 0; t < w; ++t) {
    RegionOfConformity region = region_at(field, ladder[t], adjacency);
    TreeLevel level;
    level.eps = ladder[t];

    const int32_t m = region.components.count();
    level.clusters.resize(m);
    for (int32_t c = 0; c < m; ++c) {
      level.clusters[c].id = c;
      level.clusters[c].node_count = region.components.sizes[c];
    }

    if (t > 0) {
      const TreeLevel& prev = tree.levels.back();
      // A cluster's nodes all sit inside one previous-level component, so any
      // representative node resolves the parent. Take the smallest.
      std::vector<int64_t> rep(m, -1);
      for (int64_t node : region.members) {
        const int32_t c = region.components.label[node];
        if (rep[c] < 0) rep[c] = node;
      }
      std::vector<int32_t> child_count(prev.clusters.size(), 0);
      for (int32_t c = 0; c < m; ++c) {
        const int32_t parent = prev.node_label[rep[c]];
        level.clusters[c].parent = parent;
        ++child_count[parent];
      }
      for (size_t p = 0; p < prev.clusters.size(); ++p) {
        if (child_count[p] >= 2)
          tree.splits.push_back({static_cast<int32_t>(t), static_cast<int32_t>(p)});
        else if (child_count[p] == 0)
          tree.deaths.push_back({static_cast<int32_t>(t), static_cast<int32_t>(p)});
      }
    }

    level.node_label = std::move(region.components.label);
    tree.levels.push_back(std::move(level));
  }
  return tree;
}

std::vector<PointTrajectory> trajectories(const Dataset& dataset, const ClusterTree& tree) {
  if (dataset.dim() != tree.lattice.dim())
    fail(errc::shape_mismatch, "dataset and tree lattice dimensionality differ");
  const auto w = static_cast<int32_t>(tree.levels.size());
  std::vector<PointTrajectory> out(dataset.size());
  for (int64_t i = 0; i < dataset.size(); ++i) {
    const int64_t node = tree.lattice.nearest_node(dataset.point(i));
    PointTrajectory& traj = out[i];
    traj.cluster_by_level.resize(w);
    traj.death_level = w;
    for (int32_t t = 0; t < w; ++t) {
      const int32_t c = tree.levels[t].node_label[node];
      traj.cluster_by_level[t] = c;
      if (c == kAnomaly && traj.death_level == w) traj.death_level = t;
    }
  }
  return out;
}

namespace {

struct LeafBuilder {
  const std::vector<PointTrajectory>& trajs;
  const ClusterTree& tree;
  std::vector<int32_t>& order;

  // Children of cluster `parent` at `level`, in dendrogram order.
  std::vector<int32_t> children_of(int32_t level, int32_t parent,
                                   const std::vector<int64_t>& example_count) const {
    std::vector<int32_t> kids;
    for (const TreeCluster& c : tree.levels[level].clusters)
      if (c.parent == parent) kids.push_back(c.id);
    std::stable_sort(kids.begin(), kids.end(), [&](int32_t a, int32_t b) {
      return example_count[a] > example_count[b];
    });
    return kids;
  }

  // Emit the leaves of cluster `cluster` at level `t`, whose examples are
  // `members` (ascending example index). Follows single-child chains to the
  // cluster's split or death, lays out split children by descending size,
  // then appends the examples lost along the way by descending death level.
  void emit(int32_t t, int32_t cluster, std::vector<int32_t> members) {
    const auto w = static_cast<int32_t>(tree.levels.size());
    int32_t level = t;
    int32_t id = cluster;
    std::vector<int32_t> kids;
    while (level + 1 < w) {
      std::vector<int64_t> counts(tree.levels[level + 1].clusters.size(), 0);
      for (int32_t x : members) {
        const int32_t c = trajs[x].cluster_by_level[level + 1];
        if (c != kAnomaly && tree.levels[level + 1].clusters[c].parent == id) ++counts[c];
      }
      kids = children_of(level + 1, id, counts);
      if (kids.size() == 1) {  // same cluster, tighter boundary
        id = kids.front();
        ++level;
        kids.clear();
        continue;
      }
      break;
    }

    std::vector<int32_t> lost;
    if (kids.empty()) {
      lost = std::move(members);
    } else {
      const int32_t child_level = level + 1;
      for (int32_t kid : kids) {
        std::vector<int32_t> sub;
        for (int32_t x : members)
          if (trajs[x].cluster_by_level[child_level] == kid) sub.push_back(x);
        emit(child_level, kid, std::move(sub));
      }
      for (int32_t x : members)
        if (trajs[x].cluster_by_level[child_level] == kAnomaly) lost.push_back(x);
    }
    std::stable_sort(lost.begin(), lost.end(), [&](int32_t a, int32_t b) {
      return trajs[a].death_level > trajs[b].death_level;
    });
    order.insert(order.end(), lost.begin(), lost.end());
  }
};

}  // namespace

Dendrogram leaf_order(const std::vector<PointTrajectory>& trajectories, const ClusterTree& tree) {
  const auto w = static_cast<int32_t>(tree.levels.size());
  const auto n = static_cast<int32_t>(trajectories.size());
  Dendrogram dendro;
  dendro.num_levels = w;
  dendro.death_level.resize(n);
  for (int32_t i = 0; i < n; ++i) dendro.death_level[i] = trajectories[i].death_level;
  for (const SplitEvent& s : tree.splits)
    dendro.splits.push_back({s.level, tree.levels[s.level].eps, s.parent});

  dendro.leaf_order.reserve(n);
  LeafBuilder builder{trajectories, tree, dendro.leaf_order};

  std::vector<std::vector<int32_t>> root_members(tree.levels.empty() ? 0
                                                                     : tree.levels[0].clusters.size());
  std::vector<int32_t> never_clustered;
  for (int32_t i = 0; i < n; ++i) {
    const int32_t c = w > 0 ? trajectories[i].cluster_by_level[0] : kAnomaly;
    if (c == kAnomaly)
      never_clustered.push_back(i);
    else
      root_members[c].push_back(i);
  }
  std::vector<int32_t> roots(root_members.size());
  std::iota(roots.begin(), roots.end(), 0);
  std::stable_sort(roots.begin(), roots.end(), [&](int32_t a, int32_t b) {
    return root_members[a].size() > root_members[b].size();
  });
  for (int32_t r : roots) builder.emit(0, r, std::move(root_members[r]));
  dendro.leaf_order.insert(dendro.leaf_order.end(), never_clustered.begin(),
                           never_clustered.end());
  return dendro;
}

std::vector<std::pair<double, int32_t>> cluster_counts(const ClusterTree& tree) {
  std::vector<std::pair<double, int32_t>> counts;
  counts.reserve(tree.levels.size());
  for (const TreeLevel& level : tree.levels)
    counts.emplace_back(level.eps, static_cast<int32_t>(level.clusters.size()));
  return counts;
}

}  // namespace mlcc
