#include "mlcc/model.hpp"

#include <cmath>
#include <limits>

namespace mlcc {

Dataset::Dataset(std::vector<double> points, int64_t dim) : points_(std::move(points)), d_(dim) {
  if (d_ < 1) fail(errc::invalid_argument, "dataset dimensionality must be >= 1");
  if (points_.size() % static_cast<size_t>(d_) != 0)
    fail(errc::shape_mismatch, "point buffer size is not a multiple of the dimensionality");
  n_ = static_cast<int64_t>(points_.size()) / d_;
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) fail(errc::empty_input, "dataset has no rows");
  const size_t d = rows.front().size();
  if (d == 0) fail(errc::invalid_argument, "dataset rows must have at least one feature");
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) fail(errc::shape_mismatch, "all feature vectors must have identical length");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Dataset(std::move(flat), static_cast<int64_t>(d));
}

void Dataset::set_labels(std::vector<std::string> labels, std::string column_name) {
  if (static_cast<int64_t>(labels.size()) != n_)
    fail(errc::shape_mismatch, "need exactly one label per point");
  labels_ = std::move(labels);
  label_name_ = std::move(column_name);
}

void Dataset::set_noise_flags(std::vector<uint8_t> flags) {
  if (static_cast<int64_t>(flags.size()) != n_)
    fail(errc::shape_mismatch, "need exactly one noise flag per point");
  noise_ = std::move(flags);
}

Lattice::Lattice(std::vector<int32_t> resolution, std::vector<double> lower,
                 std::vector<double> upper)
    : resolution_(std::move(resolution)), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (resolution_.empty()) fail(errc::invalid_argument, "lattice needs at least one axis");
  if (lower_.size() != resolution_.size() || upper_.size() != resolution_.size())
    fail(errc::shape_mismatch, "resolution and bounds must have the same dimensionality");
  size_ = 1;
  step_.resize(resolution_.size());
  for (size_t a = 0; a < resolution_.size(); ++a) {
    if (resolution_[a] < 1) fail(errc::invalid_argument, "axis resolution must be >= 1");
    if (!(upper_[a] >= lower_[a])) fail(errc::invalid_argument, "axis upper bound below lower bound");
    if (resolution_[a] > 1 && !(upper_[a] > lower_[a]))
      fail(errc::invalid_argument, "degenerate axis: multiple nodes but zero extent");
    if (size_ > std::numeric_limits<int64_t>::max() / resolution_[a])
      fail(errc::invalid_argument, "lattice node count overflows");
    size_ *= resolution_[a];
    step_[a] = resolution_[a] > 1 ? (upper_[a] - lower_[a]) / (resolution_[a] - 1) : 0.0;
  }
}

void Lattice::multi_index(int64_t index, std::span<int32_t> out) const {
  if (index < 0 || index >= size_) fail(errc::out_of_range, "node index out of range");
  for (int a = dim() - 1; a >= 0; --a) {
    out[a] = static_cast<int32_t>(index % resolution_[a]);
    index /= resolution_[a];
  }
}

std::vector<int32_t> Lattice::multi_index(int64_t index) const {
  std::vector<int32_t> mi(resolution_.size());
  multi_index(index, mi);
  return mi;
}

int64_t Lattice::flat_index(std::span<const int32_t> mi) const {
  if (mi.size() != resolution_.size()) fail(errc::shape_mismatch, "multi-index dimensionality mismatch");
  int64_t index = 0;
  for (size_t a = 0; a < mi.size(); ++a) {
    if (mi[a] < 0 || mi[a] >= resolution_[a]) fail(errc::out_of_range, "multi-index out of range");
    index = index * resolution_[a] + mi[a];
  }
  return index;
}

double Lattice::coordinate(int axis, int32_t i) const {
  if (i == resolution_[axis] - 1) return upper_[axis];  // hit the bound exactly
  return lower_[axis] + step_[axis] * i;
}

void Lattice::node_coordinates(int64_t index, std::span<double> out) const {
  if (index < 0 || index >= size_) fail(errc::out_of_range, "node index out of range");
  int64_t rest = index;
  for (int a = dim() - 1; a >= 0; --a) {
    const auto i = static_cast<int32_t>(rest % resolution_[a]);
    rest /= resolution_[a];
    out[a] = coordinate(a, i);
  }
}

std::vector<double> Lattice::node_coordinates(int64_t index) const {
  std::vector<double> x(resolution_.size());
  node_coordinates(index, x);
  return x;
}

int64_t Lattice::nearest_node(std::span<const double> x) const {
  if (x.size() != resolution_.size()) fail(errc::shape_mismatch, "query dimensionality mismatch");
  int64_t index = 0;
  for (size_t a = 0; a < x.size(); ++a) {
    int64_t i = 0;
    if (resolution_[a] > 1) {
      // Per-axis nearest gridline; ceil(t - 0.5) sends exact .5 ties to the
      // lower index. The per-axis choice minimises the Euclidean distance
      // because the squared distance separates across axes.
      const double t = (x[a] - lower_[a]) / step_[a];
      i = static_cast<int64_t>(std::ceil(t - 0.5));
      if (i < 0) i = 0;
      if (i >= resolution_[a]) i = resolution_[a] - 1;
    }
    index = index * resolution_[a] + i;
  }
  return index;
}

EpsilonLadder::EpsilonLadder(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) fail(errc::invalid_argument, "epsilon ladder must be nonempty");
  double prev = 0.0;
  for (double e : levels_) {
    if (!(e > 0.0 && e < 1.0)) fail(errc::out_of_range, "ladder levels must lie in (0, 1)");
    if (!(e > prev)) fail(errc::invalid_argument, "ladder levels must be strictly increasing");
    prev = e;
  }
}

PValueField::PValueField(Lattice lattice, std::vector<int32_t> counts, int32_t denominator)
    : lattice_(std::move(lattice)), counts_(std::move(counts)), denominator_(denominator) {
  if (denominator_ < 2) fail(errc::invalid_argument, "p-value denominator must be >= 2");
  if (static_cast<int64_t>(counts_.size()) != lattice_.size())
    fail(errc::shape_mismatch, "need exactly one p-value per lattice node");
  for (int32_t c : counts_)
    if (c < 1 || c > denominator_) fail(errc::out_of_range, "p-value count outside [1, l+1]");
}

}  // namespace mlcc
