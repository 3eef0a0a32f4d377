// Independent reference implementations the real code is checked against.
// Everything here is written in the most literal form possible: full sorts,
// flood fills, explicit threshold sweeps. Slow and obviously correct.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "mlcc/model.hpp"
#include "mlcc/region.hpp"

namespace oracle {

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Sum of the k smallest entries, ascending, matching the production
// summation order so results can be compared for exact equality.
inline double sum_smallest(std::vector<double> values, int k) {
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += values[i];
  return s;
}

// Conformal p-value numerator by the naive double loop: augment the bag
// with z, score every member leave-one-out, count scores >= the query's.
inline int32_t p_count(const mlcc::Dataset& dataset, std::span<const double> z, int k) {
  const int64_t l = dataset.size();
  std::vector<std::vector<double>> bag;
  for (int64_t i = 0; i < l; ++i)
    bag.emplace_back(dataset.point(i).begin(), dataset.point(i).end());
  bag.emplace_back(z.begin(), z.end());

  std::vector<double> alpha(l + 1);
  for (int64_t i = 0; i <= l; ++i) {
    std::vector<double> dists;
    for (int64_t j = 0; j <= l; ++j)
      if (j != i) dists.push_back(distance(bag[i], bag[j]));
    alpha[i] = sum_smallest(std::move(dists), k);
  }
  int32_t count = 0;
  for (int64_t i = 0; i <= l; ++i)
    if (alpha[i] >= alpha[l]) ++count;
  return count;
}

// Component labels by breadth-first flood fill, canonicalized the same way
// as the production labeling: descending size, ties by smallest node.
inline std::vector<int32_t> flood_fill(const mlcc::Lattice& lattice,
                                       const std::vector<int64_t>& members,
                                       mlcc::Adjacency adjacency) {
  const int d = lattice.dim();
  std::vector<int32_t> label(lattice.size(), -1);
  std::vector<char> member(lattice.size(), 0);
  for (int64_t m : members) member[m] = 1;

  auto neighbors = [&](int64_t node, std::vector<int64_t>& out) {
    out.clear();
    const std::vector<int32_t> mi = lattice.multi_index(node);
    if (adjacency == mlcc::Adjacency::von_neumann) {
      for (int a = 0; a < d; ++a) {
        for (int delta : {-1, 1}) {
          std::vector<int32_t> n = mi;
          n[a] += delta;
          if (n[a] < 0 || n[a] >= lattice.resolution()[a]) continue;
          out.push_back(lattice.flat_index(n));
        }
      }
      return;
    }
    // Every multi-index offset in {-1,0,1}^d except the zero offset.
    std::vector<int32_t> offset(d, -1);
    for (;;) {
      bool zero = true, valid = true;
      std::vector<int32_t> n = mi;
      for (int a = 0; a < d; ++a) {
        if (offset[a] != 0) zero = false;
        n[a] += offset[a];
        if (n[a] < 0 || n[a] >= lattice.resolution()[a]) valid = false;
      }
      if (!zero && valid) out.push_back(lattice.flat_index(n));
      int a = d - 1;
      while (a >= 0 && offset[a] == 1) offset[a--] = -1;
      if (a < 0) break;
      ++offset[a];
    }
  };

  struct Blob {
    int64_t size = 0;
    int64_t smallest = 0;
    int32_t provisional = 0;
  };
  std::vector<Blob> blobs;
  std::vector<int64_t> queue_storage, nbrs;
  int32_t next = 0;
  for (int64_t seed : members) {
    if (label[seed] != -1) continue;
    Blob blob{0, seed, next};
    std::deque<int64_t> queue{seed};
    label[seed] = next;
    while (!queue.empty()) {
      const int64_t node = queue.front();
      queue.pop_front();
      ++blob.size;
      blob.smallest = std::min(blob.smallest, node);
      neighbors(node, nbrs);
      for (int64_t n : nbrs) {
        if (!member[n] || label[n] != -1) continue;
        label[n] = next;
        queue.push_back(n);
      }
    }
    blobs.push_back(blob);
    ++next;
  }

  std::vector<int32_t> order(blobs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    if (blobs[a].size != blobs[b].size) return blobs[a].size > blobs[b].size;
    return blobs[a].smallest < blobs[b].smallest;
  });
  std::vector<int32_t> remap(blobs.size());
  for (size_t rank = 0; rank < order.size(); ++rank) remap[order[rank]] = static_cast<int32_t>(rank);
  for (int64_t m : members) label[m] = remap[label[m]];
  return label;
}

// AUC by an explicit threshold sweep over the attainable p-values, with the
// trapezoid rule joining consecutive ROC points. "Anomalous" means p <= t.
inline double auc_by_sweep(const std::vector<double>& p, const std::vector<uint8_t>& noise) {
  std::vector<double> thresholds(p);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  double pos = 0.0, neg = 0.0;
  for (uint8_t f : noise) (f ? pos : neg) += 1.0;

  double auc = 0.0, prev_fpr = 0.0, prev_tpr = 0.0;
  for (double t : thresholds) {
    double tp = 0.0, fp = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= t) (noise[i] ? tp : fp) += 1.0;
    }
    const double fpr = fp / neg, tpr = tp / pos;
    auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  return auc;
}

}  // namespace oracle
