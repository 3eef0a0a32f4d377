#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlcc/hc.hpp"
#include "mlcc/model.hpp"
#include "mlcc/multilevel.hpp"

namespace mlcc {

// Largest single-class fraction of a labeled cluster.
double purity(const std::vector<std::string>& labels);

struct PurityReport {
  std::vector<double> cluster_purity;  // one per selected cluster, selection order
  double average = 0.0;                // unweighted mean
  std::string rule;                    // selection rule applied
  bool warning = false;                // fewer than 20 clusters selected, or l < 20
};

// Mean purity of the child clusters produced by the first 10 splits, each
// child scored on its member examples at the level the split occurs. Empty
// children are skipped. With no splits at all the whole dataset is scored as
// one cluster (rule "degenerate-root").
PurityReport averaged_purity_mlcc(const ClusterTree& tree,
                                  const std::vector<PointTrajectory>& trajectories,
                                  const std::vector<std::string>& labels);

// Same rule read off the agglomerative tree top-down: the children of the
// last 10 merges, in reverse merge order.
PurityReport averaged_purity_hc(const HcTree& tree, const std::vector<std::string>& labels);

struct AucReport {
  double auc = 0.0;
  int64_t positives = 0;  // noise examples
  int64_t negatives = 0;
};

// AUC of the ranking "lower p-value means more anomalous" with noise as the
// positive class, by the tie-corrected Mann-Whitney rank formula.
AucReport anomaly_auc(const std::vector<double>& p_values,
                      const std::vector<uint8_t>& is_noise);

// Per-example p-value read off the field at the example's nearest node.
std::vector<double> example_p_values(const Dataset& dataset, const PValueField& field);

}  // namespace mlcc
