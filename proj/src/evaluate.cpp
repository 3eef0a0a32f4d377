#include "mlcc/evaluate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mlcc/errors.hpp"

namespace mlcc {

double purity(const std::vector<std::string>& labels) {
  if (labels.empty()) fail(errc::empty_input, "purity of an empty cluster is undefined");
  std::map<std::string, int64_t> counts;
  for (const std::string& s : labels) ++counts[s];
  int64_t best = 0;
  for (const auto& [label, c] : counts) best = std::max(best, c);
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

namespace {

constexpr int kSplitBudget = 10;

PurityReport finalize(PurityReport report, size_t l) {
  double sum = 0.0;
  for (double p : report.cluster_purity) sum += p;
  report.average = report.cluster_purity.empty()
                       ? 0.0
                       : sum / static_cast<double>(report.cluster_purity.size());
  if (report.cluster_purity.size() < 20 || l < 20) report.warning = true;
  return report;
}

}  // namespace

PurityReport averaged_purity_mlcc(const ClusterTree& tree,
                                  const std::vector<PointTrajectory>& trajectories,
                                  const std::vector<std::string>& labels) {
  if (labels.size() != trajectories.size())
    fail(errc::shape_mismatch, "one label per example required");
  if (labels.empty()) fail(errc::empty_input, "no labeled examples");

  PurityReport report;
  if (tree.splits.empty()) {
    report.rule = "degenerate-root";
    report.cluster_purity.push_back(purity(labels));
    return finalize(std::move(report), labels.size());
  }
  report.rule = "first-splits";

  // tree.splits is produced level by level, so it is already in increasing
  // epsilon order.
  const size_t take = std::min<size_t>(kSplitBudget, tree.splits.size());
  for (size_t s = 0; s < take; ++s) {
    const SplitEvent& split = tree.splits[s];
    for (const TreeCluster& child : tree.levels[split.level].clusters) {
      if (child.parent != split.parent) continue;
      std::vector<std::string> member_labels;
      for (size_t i = 0; i < trajectories.size(); ++i)
        if (trajectories[i].cluster_by_level[split.level] == child.id)
          member_labels.push_back(labels[i]);
      if (member_labels.empty()) continue;
      report.cluster_purity.push_back(purity(member_labels));
    }
  }
  if (report.cluster_purity.empty()) {
    report.rule = "degenerate-root";
    report.cluster_purity.push_back(purity(labels));
  }
  return finalize(std::move(report), labels.size());
}

namespace {

// Example indices under HC cluster id (originals 0..n-1, merge m makes n+m).
void collect_members(const HcTree& tree, int32_t id, std::vector<int64_t>& out) {
  if (id < tree.n) {
    out.push_back(id);
    return;
  }
  const HcMerge& merge = tree.merges[id - tree.n];
  collect_members(tree, merge.a, out);
  collect_members(tree, merge.b, out);
}

}  // namespace

PurityReport averaged_purity_hc(const HcTree& tree, const std::vector<std::string>& labels) {
  if (static_cast<int64_t>(labels.size()) != tree.n)
    fail(errc::shape_mismatch, "one label per example required");
  if (labels.empty()) fail(errc::empty_input, "no labeled examples");

  PurityReport report;
  if (tree.merges.empty()) {
    report.rule = "degenerate-root";
    report.cluster_purity.push_back(purity(labels));
    return finalize(std::move(report), labels.size());
  }
  report.rule = "first-splits";

  const auto merges = static_cast<int64_t>(tree.merges.size());
  const int64_t take = std::min<int64_t>(kSplitBudget, merges);
  for (int64_t s = 0; s < take; ++s) {
    const HcMerge& merge = tree.merges[merges - 1 - s];
    for (int32_t child : {merge.a, merge.b}) {
      std::vector<int64_t> members;
      collect_members(tree, child, members);
      std::vector<std::string> member_labels;
      member_labels.reserve(members.size());
      for (int64_t i : members) member_labels.push_back(labels[i]);
      report.cluster_purity.push_back(purity(member_labels));
    }
  }
  return finalize(std::move(report), labels.size());
}

AucReport anomaly_auc(const std::vector<double>& p_values,
                      const std::vector<uint8_t>& is_noise) {
  if (p_values.size() != is_noise.size())
    fail(errc::shape_mismatch, "one noise flag per p-value required");
  AucReport report;
  for (uint8_t f : is_noise) (f ? report.positives : report.negatives) += 1;
  if (report.positives == 0 || report.negatives == 0)
    fail(errc::undefined_metric, "AUC needs both noise and normal examples");

  const size_t n = p_values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return p_values[a] < p_values[b]; });

  // Average ranks over ties, 1-based, ascending p.
  double rank_pos = 0.0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && p_values[order[j]] == p_values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1..j
    for (size_t t = i; t < j; ++t)
      if (is_noise[order[t]]) rank_pos += rank;
    i = j;
  }

  const double pos = static_cast<double>(report.positives);
  const double neg = static_cast<double>(report.negatives);
  // Low p ranks first; anomalies should rank low, so invert the U statistic.
  report.auc = 1.0 - (rank_pos - pos * (pos + 1.0) / 2.0) / (pos * neg);
  return report;
}

std::vector<double> example_p_values(const Dataset& dataset, const PValueField& field) {
  if (dataset.dim() != field.lattice().dim())
    fail(errc::shape_mismatch, "dataset and field dimensionality differ");
  std::vector<double> out(dataset.size());
  for (int64_t i = 0; i < dataset.size(); ++i)
    out[i] = field.p(field.lattice().nearest_node(dataset.point(i)));
  return out;
}

}  // namespace mlcc
