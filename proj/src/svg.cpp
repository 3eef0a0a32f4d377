#include "mlcc/svg.hpp"

#include <algorithm>
#include <map>

#include "mlcc/csv.hpp"
#include "mlcc/errors.hpp"

namespace mlcc {

namespace {

const char* kPalette[] = {"black",  "red",    "green",  "blue",   "deepskyblue",
                          "orange", "purple", "brown",  "magenta", "teal"};
constexpr int kPaletteSize = 10;

std::string num(double v) { return format_double(v); }

// Stable label -> palette index by first appearance.
std::map<std::string, int> color_map(const std::vector<std::string>& labels) {
  std::map<std::string, int> colors;
  int next = 0;
  for (const std::string& s : labels)
    if (colors.emplace(s, next % kPaletteSize).second) ++next;
  return colors;
}

struct Panel {
  int ax = 0, ay = 1;  // lattice axes drawn on x and y
  double ox = 0.0;     // panel origin in canvas coordinates
};

}  // namespace

std::string region_svg(const PValueField& field, const RegionOfConformity& region,
                       const Dataset& dataset) {
  const Lattice& lattice = field.lattice();
  const int d = lattice.dim();
  if (d != 2 && d != 3)
    fail(errc::invalid_argument, "region plots support 2 or 3 features only");
  if (dataset.dim() != d)
    fail(errc::shape_mismatch, "dataset and lattice dimensionality differ");

  std::vector<Panel> panels;
  constexpr double kPlot = 420.0;
  constexpr double kMargin = 40.0;
  if (d == 2) {
    panels.push_back({0, 1, kMargin});
  } else {
    panels.push_back({0, 1, kMargin});
    panels.push_back({0, 2, kMargin + kPlot + kMargin});
    panels.push_back({1, 2, kMargin + 2 * (kPlot + kMargin)});
  }
  const double width = panels.back().ox + kPlot + kMargin;
  const double height = kMargin + kPlot + kMargin;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                    num(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<title>region of conformity, eps " + num(region.level) + "</title>\n";

  const auto colors = color_map(dataset.labels());

  std::vector<int32_t> mi(d);
  for (const Panel& panel : panels) {
    const int rx = lattice.resolution()[panel.ax];
    const int ry = lattice.resolution()[panel.ay];
    const double cw = kPlot / rx;
    const double ch = kPlot / ry;

    // Projected membership: a projected cell is in when any member node maps
    // onto it.
    std::vector<uint8_t> cell(static_cast<size_t>(rx) * ry, 0);
    for (int64_t node : region.members) {
      lattice.multi_index(node, mi);
      cell[static_cast<size_t>(mi[panel.ax]) * ry + mi[panel.ay]] = 1;
    }
    for (int ix = 0; ix < rx; ++ix) {
      for (int iy = 0; iy < ry; ++iy) {
        if (!cell[static_cast<size_t>(ix) * ry + iy]) continue;
        const double x = panel.ox + ix * cw;
        const double y = kMargin + kPlot - (iy + 1) * ch;
        svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) +
               "\" height=\"" + num(ch) + "\" fill=\"gold\"/>\n";
      }
    }

    auto to_canvas_x = [&](double v) {
      const double lo = lattice.lower()[panel.ax];
      const double hi = lattice.upper()[panel.ax];
      const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
      return panel.ox + t * kPlot;
    };
    auto to_canvas_y = [&](double v) {
      const double lo = lattice.lower()[panel.ay];
      const double hi = lattice.upper()[panel.ay];
      const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
      return kMargin + kPlot - t * kPlot;
    };
    for (int64_t i = 0; i < dataset.size(); ++i) {
      const auto p = dataset.point(i);
      const char* color =
          dataset.has_labels() ? kPalette[colors.at(dataset.labels()[i])] : "black";
      svg += "<circle cx=\"" + num(to_canvas_x(p[panel.ax])) + "\" cy=\"" +
             num(to_canvas_y(p[panel.ay])) + "\" r=\"2\" fill=\"" + color + "\"/>\n";
    }

    svg += "<rect x=\"" + num(panel.ox) + "\" y=\"" + num(kMargin) + "\" width=\"" +
           num(kPlot) + "\" height=\"" + num(kPlot) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(panel.ox) + "\" y=\"" + num(kMargin - 8.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\">axes " +
           std::to_string(panel.ax) + "," + std::to_string(panel.ay) + " eps " +
           num(region.level) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

std::string dendrogram_svg(const ClusterTree& tree,
                           const std::vector<PointTrajectory>& trajectories,
                           const Dendrogram& dendrogram,
                           const std::vector<std::string>& labels) {
  const auto w = static_cast<int32_t>(tree.levels.size());
  const auto n = static_cast<int64_t>(dendrogram.leaf_order.size());
  if (n == 0) fail(errc::empty_input, "no examples to draw");
  if (!labels.empty() && static_cast<int64_t>(labels.size()) != n)
    fail(errc::shape_mismatch, "one label per example required");

  constexpr double kMargin = 40.0;
  constexpr double kPlotH = 420.0;
  const double leaf_w = std::clamp(900.0 / static_cast<double>(n), 0.5, 12.0);
  const double plot_w = leaf_w * static_cast<double>(n);
  const double row_h = kPlotH / std::max(w, 1);
  const double width = kMargin * 2 + plot_w;
  const double height = kMargin * 2 + kPlotH + 12.0;

  // Position of each example in the reordered axis.
  std::vector<int64_t> pos(n);
  for (int64_t i = 0; i < n; ++i) pos[dendrogram.leaf_order[i]] = i;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                    num(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<title>multi-level dendrogram</title>\n";

  // One bar per contiguous run of a cluster's examples, low levels at the
  // bottom. Leaf contiguity makes each cluster exactly one run.
  for (int32_t t = 0; t < w; ++t) {
    const double y = kMargin + kPlotH - (t + 1) * row_h;
    std::vector<int64_t> run_lo(tree.levels[t].clusters.size(), n);
    std::vector<int64_t> run_hi(tree.levels[t].clusters.size(), -1);
    for (int64_t i = 0; i < n; ++i) {
      const int32_t c = trajectories[i].cluster_by_level[t];
      if (c == kAnomaly) continue;
      run_lo[c] = std::min(run_lo[c], pos[i]);
      run_hi[c] = std::max(run_hi[c], pos[i]);
    }
    for (size_t c = 0; c < run_lo.size(); ++c) {
      if (run_hi[c] < run_lo[c]) continue;  // no examples project into it
      const double x = kMargin + run_lo[c] * leaf_w;
      const double bw = (run_hi[c] - run_lo[c] + 1) * leaf_w;
      svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(bw) +
             "\" height=\"" + num(row_h) +
             "\" fill=\"silver\" stroke=\"white\" stroke-width=\"0.4\"/>\n";
    }
  }

  // Split markers sit on the boundary above the parent's bar.
  for (const SplitMarker& split : dendrogram.splits) {
    const int32_t t = split.level - 1;
    if (t < 0) continue;
    int64_t lo = n, hi = -1;
    for (int64_t i = 0; i < n; ++i) {
      if (trajectories[i].cluster_by_level[t] != split.parent) continue;
      lo = std::min(lo, pos[i]);
      hi = std::max(hi, pos[i]);
    }
    if (hi < lo) continue;
    const double cx = kMargin + (lo + hi + 1) * 0.5 * leaf_w;
    const double cy = kMargin + kPlotH - (t + 1) * row_h;
    svg += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
           "\" r=\"3\" fill=\"crimson\"/>\n";
  }

  if (!labels.empty()) {
    const auto colors = color_map(labels);
    for (int64_t i = 0; i < n; ++i) {
      const int32_t example = dendrogram.leaf_order[i];
      svg += "<rect x=\"" + num(kMargin + i * leaf_w) + "\" y=\"" +
             num(kMargin + kPlotH + 4.0) + "\" width=\"" + num(leaf_w) +
             "\" height=\"8\" fill=\"" +
             kPalette[colors.at(labels[example])] + "\"/>\n";
    }
  }

  svg += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kMargin - 8.0) +
         "\" font-family=\"sans-serif\" font-size=\"13\">examples " + std::to_string(n) +
         ", levels " + std::to_string(w) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace mlcc
