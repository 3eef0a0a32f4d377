#include "mlcc/hc.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mlcc/errors.hpp"
#include "mlcc/ncm.hpp"

namespace mlcc {

HcTree single_linkage(const Dataset& dataset) {
  const int64_t n = dataset.size();
  if (n < 2) fail(errc::insufficient_data, "need at least two examples to cluster");
  HcTree tree;
  tree.n = n;

  // Active clusters live in slots 0..m-1; `id` maps slot to cluster id.
  std::vector<int32_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<double> dist(static_cast<size_t>(n) * n, 0.0);
  auto at = [&](int64_t i, int64_t j) -> double& { return dist[i * n + j]; };
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = i + 1; j < n; ++j)
      at(i, j) = at(j, i) = euclidean_distance(dataset.point(i), dataset.point(j));

  int64_t m = n;
  tree.merges.reserve(n - 1);
  for (int64_t step = 0; step < n - 1; ++step) {
    int64_t bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    int32_t blo = 0, bhi = 0;
    for (int64_t i = 0; i < m; ++i) {
      for (int64_t j = i + 1; j < m; ++j) {
        const double d = at(i, j);
        const int32_t lo = std::min(id[i], id[j]);
        const int32_t hi = std::max(id[i], id[j]);
        if (d < best || (d == best && (lo < blo || (lo == blo && hi < bhi)))) {
          best = d;
          bi = i;
          bj = j;
          blo = lo;
          bhi = hi;
        }
      }
    }
    tree.merges.push_back({blo, bhi, best});

    // Single linkage: the merged cluster sits at min distance to the rest.
    for (int64_t x = 0; x < m; ++x) {
      const double d = std::min(at(bi, x), at(bj, x));
      at(bi, x) = at(x, bi) = d;
    }
    at(bi, bi) = 0.0;
    id[bi] = static_cast<int32_t>(n + step);

    const int64_t last = m - 1;
    if (bj != last) {
      id[bj] = id[last];
      for (int64_t x = 0; x < m; ++x) {
        at(bj, x) = at(last, x);
        at(x, bj) = at(x, last);
      }
      at(bj, bj) = 0.0;
    }
    --m;
  }
  return tree;
}

std::vector<int32_t> cut(const HcTree& tree, int32_t k) {
  if (k < 1 || k > tree.n) fail(errc::out_of_range, "cut size must be in [1, n]");
  const int64_t applied = tree.n - k;
  std::vector<int32_t> parent(tree.n + applied);
  std::iota(parent.begin(), parent.end(), 0);
  for (int64_t s = 0; s < applied; ++s) {
    parent[tree.merges[s].a] = static_cast<int32_t>(tree.n + s);
    parent[tree.merges[s].b] = static_cast<int32_t>(tree.n + s);
  }
  auto find = [&](int32_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };

  std::vector<int32_t> labels(tree.n);
  std::vector<int32_t> remap(parent.size(), -1);
  int32_t next = 0;
  for (int64_t i = 0; i < tree.n; ++i) {
    const int32_t root = find(static_cast<int32_t>(i));
    if (remap[root] < 0) remap[root] = next++;
    labels[i] = remap[root];
  }
  return labels;
}

}  // namespace mlcc
