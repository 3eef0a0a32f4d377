#pragma once

#include <cstdint>
#include <vector>

#include "mlcc/model.hpp"

namespace mlcc {

// Neighborhood rule for joining lattice nodes into virtual clusters.
// "Within one grid point" is read as Chebyshev distance <= 1 in multi-index
// space (moore, 3^d - 1 neighbors); von_neumann restricts to axis neighbors.
enum class Adjacency { moore, von_neumann };

// Nodes with p >= eps, ascending. eps must lie strictly inside (0, 1).
std::vector<int64_t> threshold(const PValueField& field, double eps);

// Component ids per lattice node (-1 outside the member set). Ids are
// canonical: components numbered by descending size, ties by the smallest
// contained node index.
struct ComponentLabeling {
  std::vector<int32_t> label;
  std::vector<int64_t> sizes;

  int32_t count() const noexcept { return static_cast<int32_t>(sizes.size()); }
};

// Labels the connected components of a member set under the adjacency rule.
// members must be sorted ascending and within the lattice.
ComponentLabeling connected_components(const Lattice& lattice, const std::vector<int64_t>& members,
                                       Adjacency adjacency = Adjacency::moore);

// Region of conformity at one significance level: member nodes plus their
// component labeling.
struct RegionOfConformity {
  double level = 0.0;
  std::vector<int64_t> members;
  ComponentLabeling components;
};

RegionOfConformity region_at(const PValueField& field, double eps,
                             Adjacency adjacency = Adjacency::moore);

}  // namespace mlcc
