#include "mlcc/region.hpp"

#include <algorithm>
#include <numeric>

namespace mlcc {

namespace {

struct UnionFind {
  std::vector<int64_t> parent;

  explicit UnionFind(int64_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int64_t find(int64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];  // path halving
      x = parent[x];
    }
    return x;
  }

  void unite(int64_t a, int64_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Offsets into {-1,0,1}^d that point to an already-visited neighbor (first
// nonzero component negative), so each adjacent pair is united once.
std::vector<std::vector<int32_t>> backward_offsets(int d, Adjacency adjacency) {
  std::vector<std::vector<int32_t>> offsets;
  if (adjacency == Adjacency::von_neumann) {
    for (int a = 0; a < d; ++a) {
      std::vector<int32_t> off(d, 0);
      off[a] = -1;
      offsets.push_back(std::move(off));
    }
    return offsets;
  }
  std::vector<int32_t> off(d, -1);
  while (true) {
    bool negative_first = false;
    for (int a = 0; a < d; ++a) {
      if (off[a] == 0) continue;
      negative_first = off[a] < 0;
      break;
    }
    if (negative_first) offsets.push_back(off);
    int a = d - 1;
    while (a >= 0 && off[a] == 1) off[a--] = -1;
    if (a < 0) break;
    ++off[a];
  }
  return offsets;
}

}  // namespace

std::vector<int64_t> threshold(const PValueField& field, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(errc::out_of_range, "significance level must lie in (0, 1)");
  std::vector<int64_t> members;
  const int64_t u = field.size();
  for (int64_t i = 0; i < u; ++i)
    if (field.p(i) >= eps) members.push_back(i);
  return members;
}

ComponentLabeling connected_components(const Lattice& lattice, const std::vector<int64_t>& members,
                                       Adjacency adjacency) {
  const int64_t u = lattice.size();
  const int d = lattice.dim();
  ComponentLabeling out;
  out.label.assign(u, -1);
  if (members.empty()) return out;
  if (members.front() < 0 || members.back() >= u)
    fail(errc::out_of_range, "member node index outside the lattice");

  // Position of each member in the (ascending) member list; doubles as the
  // membership mask.
  std::vector<int64_t> pos(u, -1);
  for (size_t m = 0; m < members.size(); ++m) pos[members[m]] = static_cast<int64_t>(m);

  const auto offsets = backward_offsets(d, adjacency);
  UnionFind uf(static_cast<int64_t>(members.size()));

  std::vector<int32_t> mi(d), nb(d);
  for (size_t m = 0; m < members.size(); ++m) {
    lattice.multi_index(members[m], mi);
    for (const auto& off : offsets) {
      bool inside = true;
      for (int a = 0; a < d; ++a) {
        nb[a] = mi[a] + off[a];
        if (nb[a] < 0 || nb[a] >= lattice.resolution()[a]) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      const int64_t neighbor = lattice.flat_index(nb);
      if (pos[neighbor] >= 0) uf.unite(static_cast<int64_t>(m), pos[neighbor]);
    }
  }

  // Canonical ids: descending size, ties by smallest contained node index.
  // Members are ascending, so the first member of each root is its smallest.
  std::vector<int64_t> root_of(members.size());
  std::vector<int64_t> root_size;
  std::vector<int64_t> root_min_node;
  std::vector<int32_t> root_slot(members.size(), -1);
  for (size_t m = 0; m < members.size(); ++m) {
    const int64_t r = uf.find(static_cast<int64_t>(m));
    root_of[m] = r;
    if (root_slot[r] < 0) {
      root_slot[r] = static_cast<int32_t>(root_size.size());
      root_size.push_back(0);
      root_min_node.push_back(members[m]);
    }
    ++root_size[root_slot[r]];
  }

  std::vector<int32_t> order(root_size.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    if (root_size[a] != root_size[b]) return root_size[a] > root_size[b];
    return root_min_node[a] < root_min_node[b];
  });
  std::vector<int32_t> canonical(root_size.size());
  out.sizes.resize(root_size.size());
  for (size_t rank = 0; rank < order.size(); ++rank) {
    canonical[order[rank]] = static_cast<int32_t>(rank);
    out.sizes[rank] = root_size[order[rank]];
  }

  for (size_t m = 0; m < members.size(); ++m)
    out.label[members[m]] = canonical[root_slot[root_of[m]]];
  return out;
}

RegionOfConformity region_at(const PValueField& field, double eps, Adjacency adjacency) {
  RegionOfConformity region;
  region.level = eps;
  region.members = threshold(field, eps);
  region.components = connected_components(field.lattice(), region.members, adjacency);
  return region;
}

}  // namespace mlcc
