#include "mlcc/conformal.hpp"

#include <algorithm>
#include <thread>

namespace mlcc {

namespace {

void validate(const Dataset& dataset, const NcmConfig& config) {
  if (config.k < 1) fail(errc::invalid_argument, "neighbor count k must be >= 1");
  if (dataset.size() < config.k)
    fail(errc::insufficient_data, "dataset smaller than the neighbor count k");
}

// Per-training-point cache: the k smallest distances to the other training
// points in ascending order, plus their running sum. For a query at distance
// d from point i, the k nearest within (training \ {i}) + {query} are either
// the cached k (d >= kth) or the cached list with d spliced in and the last
// entry dropped. Summing ascending in both branches reproduces the naive
// leave-one-out score bit for bit.
struct NeighborCache {
  int32_t k = 0;
  std::vector<double> sorted;  // l rows of k ascending distances
  std::vector<double> sum;     // ascending sum per row
  std::vector<double> kth;     // last entry per row
};

NeighborCache build_cache(const Dataset& dataset, int32_t k) {
  const int64_t l = dataset.size();
  NeighborCache cache;
  cache.k = k;
  cache.sorted.resize(l * k);
  cache.sum.resize(l);
  cache.kth.resize(l);
  std::vector<double> dists;
  dists.reserve(l - 1);
  for (int64_t i = 0; i < l; ++i) {
    dists.clear();
    for (int64_t j = 0; j < l; ++j)
      if (j != i) dists.push_back(euclidean_distance(dataset.point(i), dataset.point(j)));
    std::partial_sort(dists.begin(), dists.begin() + k, dists.end());
    double s = 0.0;
    for (int32_t t = 0; t < k; ++t) {
      cache.sorted[i * k + t] = dists[t];
      s += dists[t];
    }
    cache.sum[i] = s;
    cache.kth[i] = dists[k - 1];
  }
  return cache;
}

// Ascending sum of the k smallest among (row of k cached distances) + {d},
// assuming d < kth so d displaces the last cached entry.
double splice_sum(const double* row, int32_t k, double d) {
  double s = 0.0;
  bool placed = false;
  int32_t ci = 0;
  for (int32_t t = 0; t < k; ++t) {
    if (!placed && d <= row[ci]) {
      s += d;
      placed = true;
    } else {
      s += row[ci++];
    }
  }
  return s;
}

int32_t node_count(const Dataset& dataset, const NeighborCache& cache,
                   std::span<const double> node, std::vector<double>& dist_buf,
                   std::vector<double>& sort_buf) {
  const int64_t l = dataset.size();
  const int32_t k = cache.k;
  dist_buf.resize(l);
  for (int64_t i = 0; i < l; ++i) dist_buf[i] = euclidean_distance(dataset.point(i), node);
  sort_buf = dist_buf;
  const double alpha_query = sum_k_smallest(sort_buf, k);
  int32_t count = 1;  // the query's own score always ties itself
  for (int64_t i = 0; i < l; ++i) {
    const double d = dist_buf[i];
    const double alpha =
        d >= cache.kth[i] ? cache.sum[i] : splice_sum(&cache.sorted[i * k], k, d);
    if (alpha >= alpha_query) ++count;
  }
  return count;
}

}  // namespace

Rational p_value(const Dataset& dataset, std::span<const double> z, const NcmConfig& config) {
  validate(dataset, config);
  const int64_t l = dataset.size();
  const int32_t k = config.k;
  if (static_cast<int64_t>(z.size()) != dataset.dim())
    fail(errc::shape_mismatch, "query dimensionality mismatch");

  std::vector<double> query_dists(l);
  for (int64_t i = 0; i < l; ++i) query_dists[i] = euclidean_distance(dataset.point(i), z);

  std::vector<double> buf = query_dists;
  const double alpha_query = sum_k_smallest(buf, k);

  int32_t count = 1;
  for (int64_t i = 0; i < l; ++i) {
    buf.clear();
    for (int64_t j = 0; j < l; ++j)
      if (j != i) buf.push_back(euclidean_distance(dataset.point(i), dataset.point(j)));
    buf.push_back(query_dists[i]);
    if (sum_k_smallest(buf, k) >= alpha_query) ++count;
  }
  return {count, static_cast<int32_t>(l + 1)};
}

PValueField field(const Dataset& dataset, const Lattice& lattice, const NcmConfig& config,
                  int workers) {
  validate(dataset, config);
  if (lattice.dim() != dataset.dim())
    fail(errc::shape_mismatch, "lattice and dataset dimensionality differ");
  const int64_t l = dataset.size();
  const int64_t u = lattice.size();
  std::vector<int32_t> counts(u);

  if (config.k >= l) {
    // Degenerate k = l: every query distance enters the neighbor set, so the
    // cache buys nothing; score each node directly.
    for (int64_t n = 0; n < u; ++n)
      counts[n] = p_value(dataset, lattice.node_coordinates(n), config).num;
    return PValueField(lattice, std::move(counts), static_cast<int32_t>(l + 1));
  }

  const NeighborCache cache = build_cache(dataset, config.k);

  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > u) workers = static_cast<int>(u);

  // Static contiguous slices: node values are independent, so the result is
  // the same for any worker count.
  auto run_slice = [&](int64_t begin, int64_t end) {
    std::vector<double> coords(lattice.dim());
    std::vector<double> dist_buf, sort_buf;
    for (int64_t n = begin; n < end; ++n) {
      lattice.node_coordinates(n, coords);
      counts[n] = node_count(dataset, cache, coords, dist_buf, sort_buf);
    }
  };

  if (workers == 1) {
    run_slice(0, u);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int64_t chunk = (u + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int64_t begin = w * chunk;
      const int64_t end = std::min(u, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_slice, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  return PValueField(lattice, std::move(counts), static_cast<int32_t>(l + 1));
}

}  // namespace mlcc
