#pragma once

#include <cstdint>

#include "mlcc/model.hpp"
#include "mlcc/ncm.hpp"

namespace mlcc {

// Exact conformal p-value: count / denominator with denominator = l + 1.
struct Rational {
  int32_t num = 0;
  int32_t den = 1;

  double value() const { return num / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Conformal p-value of a query z against the observed dataset. The bag is
// augmented with z, every example is scored leave-one-out against the other
// l points, and the p-value counts scores >= the query's own (ties included).
Rational p_value(const Dataset& dataset, std::span<const double> z, const NcmConfig& config);

// Conformal p-value at every lattice node. Each node's value equals
// p_value(dataset, node_coordinates(i)) exactly, and the output is
// bit-identical for any worker count (workers <= 0 uses the hardware count).
PValueField field(const Dataset& dataset, const Lattice& lattice, const NcmConfig& config,
                  int workers = 0);

}  // namespace mlcc
