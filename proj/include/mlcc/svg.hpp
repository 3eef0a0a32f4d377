#pragma once

#include <string>
#include <vector>

#include "mlcc/model.hpp"
#include "mlcc/multilevel.hpp"
#include "mlcc/region.hpp"

namespace mlcc {

// Scatter of the region of conformity at one level: member cells filled
// yellow, data points colored by label. Supports d = 2 directly; d = 3 emits
// the three pairwise axis projections side by side. Higher d is refused.
std::string region_svg(const PValueField& field, const RegionOfConformity& region,
                       const Dataset& dataset);

// The multi-level dendrogram: one grey bar per cluster per level over the
// reordered examples, split levels marked. Label ticks drawn underneath when
// the dataset carries labels.
std::string dendrogram_svg(const ClusterTree& tree,
                           const std::vector<PointTrajectory>& trajectories,
                           const Dendrogram& dendrogram,
                           const std::vector<std::string>& labels);

}  // namespace mlcc
