#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlcc/errors.hpp"

namespace mlcc {

// Feature vectors in row-major storage plus optional evaluation-only
// metadata (class labels, noise flags). Clustering operations never read the
// metadata; only the evaluation module does.
class Dataset {
public:
  // Takes ownership of a flat row-major buffer of size n * dim.
  Dataset(std::vector<double> points, int64_t dim);

  static Dataset from_rows(const std::vector<std::vector<double>>& rows);

  int64_t size() const noexcept { return n_; }
  int64_t dim() const noexcept { return d_; }
  std::span<const double> point(int64_t i) const {
    return {points_.data() + i * d_, static_cast<size_t>(d_)};
  }
  const std::vector<double>& raw() const noexcept { return points_; }

  void set_labels(std::vector<std::string> labels, std::string column_name = "label");
  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label_name() const noexcept { return label_name_; }

  void set_noise_flags(std::vector<uint8_t> flags);
  bool has_noise_flags() const noexcept { return !noise_.empty(); }
  const std::vector<uint8_t>& noise_flags() const noexcept { return noise_; }

private:
  std::vector<double> points_;
  int64_t n_ = 0;
  int64_t d_ = 0;
  std::vector<std::string> labels_;
  std::string label_name_;
  std::vector<uint8_t> noise_;
};

// Regular grid over the (rescaled) feature space. Nodes are enumerated in
// row-major order with the last axis varying fastest; flat index,
// multi-index and coordinates convert back and forth exactly.
class Lattice {
public:
  Lattice(std::vector<int32_t> resolution, std::vector<double> lower, std::vector<double> upper);

  int dim() const noexcept { return static_cast<int>(resolution_.size()); }
  int64_t size() const noexcept { return size_; }
  const std::vector<int32_t>& resolution() const noexcept { return resolution_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }

  // Grid spacing along one axis (0 when the axis has a single node).
  double step(int axis) const { return step_[axis]; }

  std::vector<int32_t> multi_index(int64_t index) const;
  void multi_index(int64_t index, std::span<int32_t> out) const;
  int64_t flat_index(std::span<const int32_t> mi) const;

  // Coordinate of one node along one axis; the first and last node land on
  // the bounds exactly.
  double coordinate(int axis, int32_t i) const;
  std::vector<double> node_coordinates(int64_t index) const;
  void node_coordinates(int64_t index, std::span<double> out) const;

  // Index of the node closest to x in Euclidean distance. Exact ties go to
  // the lower multi-index; out-of-bounds queries clamp to the boundary.
  int64_t nearest_node(std::span<const double> x) const;

private:
  std::vector<int32_t> resolution_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> step_;
  int64_t size_ = 0;
};

// Strictly increasing significance levels, all inside (0, 1).
class EpsilonLadder {
public:
  explicit EpsilonLadder(std::vector<double> levels);

  size_t size() const noexcept { return levels_.size(); }
  double operator[](size_t i) const { return levels_[i]; }
  const std::vector<double>& levels() const noexcept { return levels_; }

private:
  std::vector<double> levels_;
};

// One conformal p-value per lattice node, stored as the exact rational
// count / denominator with denominator = l + 1. Every count lies in
// [1, denominator].
class PValueField {
public:
  PValueField(Lattice lattice, std::vector<int32_t> counts, int32_t denominator);

  const Lattice& lattice() const noexcept { return lattice_; }
  int64_t size() const noexcept { return static_cast<int64_t>(counts_.size()); }
  int32_t count(int64_t i) const { return counts_[i]; }
  const std::vector<int32_t>& counts() const noexcept { return counts_; }
  int32_t denominator() const noexcept { return denominator_; }
  double p(int64_t i) const { return counts_[i] / static_cast<double>(denominator_); }

private:
  Lattice lattice_;
  std::vector<int32_t> counts_;
  int32_t denominator_;
};

}  // namespace mlcc
