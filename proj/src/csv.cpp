#include "mlcc/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mlcc/errors.hpp"

namespace mlcc {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& where) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    fail(errc::parse, where + ": '" + token + "' is not a number");
  return v;
}

int64_t parse_int(const std::string& token, const std::string& where) {
  int64_t v = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    fail(errc::parse, where + ": '" + token + "' is not an integer");
  return v;
}

int64_t CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int64_t>(i);
  return -1;
}

namespace {

// One logical CSV record; respects quoting, so embedded newlines stay inside
// their field. Returns false at end of input.
bool next_record(const std::string& text, size_t& pos, int64_t row,
                 const std::string& context, std::vector<std::string>& out) {
  out.clear();
  if (pos >= text.size()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  while (pos < text.size()) {
    const char c = text[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
        } else {
          quoted = false;
          ++pos;
        }
      } else {
        field.push_back(c);
        ++pos;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty())
        fail(errc::parse, context + " row " + std::to_string(row) + ": stray quote");
      quoted = true;
      any = true;
      ++pos;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
      any = true;
      ++pos;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      out.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
      any = true;
      ++pos;
    }
  }
  if (quoted) fail(errc::parse, context + " row " + std::to_string(row) + ": unclosed quote");
  if (!any && out.empty()) return false;
  out.push_back(std::move(field));
  return true;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& context) {
  CsvTable table;
  size_t pos = 0;
  if (!next_record(text, pos, 1, context, table.header))
    fail(errc::parse, context + ": missing header row");
  std::vector<std::string> record;
  int64_t row = 2;
  while (next_record(text, pos, row, context, record)) {
    if (record.size() == 1 && record[0].empty()) {  // blank trailing line
      ++row;
      continue;
    }
    if (record.size() != table.header.size())
      fail(errc::parse, context + " row " + std::to_string(row) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(record.size()));
    table.rows.push_back(record);
    ++row;
  }
  return table;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(errc::io, "read failure on '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) fail(errc::io, "write failure on '" + path + "'");
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text_file(path), path); }

Dataset ingest_csv(const std::string& path, const IngestOptions& options) {
  const CsvTable table = parse_csv(read_text_file(path), path);

  int64_t label_col = -1;
  if (!options.label_column.empty()) {
    label_col = table.column(options.label_column);
    if (label_col < 0)
      fail(errc::invalid_argument,
           path + ": no column named '" + options.label_column + "'");
  } else {
    label_col = table.column("component");
  }
  const int64_t noise_col =
      options.noise_column.empty() ? -1 : table.column(options.noise_column);

  std::vector<int64_t> feature_cols;
  for (size_t c = 0; c < table.header.size(); ++c) {
    const auto ci = static_cast<int64_t>(c);
    if (ci != label_col && ci != noise_col) feature_cols.push_back(ci);
  }
  if (feature_cols.empty()) fail(errc::invalid_argument, path + ": no feature columns");

  const int64_t n = static_cast<int64_t>(table.rows.size());
  const int64_t d = static_cast<int64_t>(feature_cols.size());
  std::vector<double> points;
  points.reserve(n * d);
  for (int64_t r = 0; r < n; ++r) {
    for (int64_t c : feature_cols) {
      const std::string where = path + " row " + std::to_string(r + 2) + " column '" +
                                table.header[c] + "'";
      points.push_back(parse_double(table.rows[r][c], where));
    }
  }

  Dataset dataset(std::move(points), d);

  if (label_col >= 0) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int64_t r = 0; r < n; ++r) labels.push_back(table.rows[r][label_col]);
    if (options.binarize_label) {
      std::vector<double> values(n);
      double mean = 0.0;
      for (int64_t r = 0; r < n; ++r) {
        const std::string where = path + " row " + std::to_string(r + 2) + " column '" +
                                  options.label_column + "'";
        values[r] = parse_double(labels[r], where);
        mean += values[r];
      }
      if (n > 0) mean /= static_cast<double>(n);
      for (int64_t r = 0; r < n; ++r) labels[r] = values[r] > mean ? "1" : "0";
    }
    dataset.set_labels(std::move(labels), table.header[label_col]);
  }

  if (noise_col >= 0) {
    std::vector<uint8_t> flags;
    flags.reserve(n);
    for (int64_t r = 0; r < n; ++r) {
      const std::string where = path + " row " + std::to_string(r + 2) + " column '" +
                                table.header[noise_col] + "'";
      const int64_t v = parse_int(table.rows[r][noise_col], where);
      if (v != 0 && v != 1) fail(errc::parse, where + ": noise flag must be 0 or 1");
      flags.push_back(static_cast<uint8_t>(v));
    }
    dataset.set_noise_flags(std::move(flags));
  }

  return dataset;
}

std::string dataset_csv_string(const Dataset& dataset) {
  std::string out;
  for (int64_t a = 0; a < dataset.dim(); ++a) {
    if (a) out.push_back(',');
    out += "x" + std::to_string(a + 1);
  }
  if (dataset.has_labels()) out += "," + quote_csv(dataset.label_name());
  if (dataset.has_noise_flags()) out += ",is_noise";
  out.push_back('\n');

  for (int64_t i = 0; i < dataset.size(); ++i) {
    const auto p = dataset.point(i);
    for (int64_t a = 0; a < dataset.dim(); ++a) {
      if (a) out.push_back(',');
      out += format_double(p[a]);
    }
    if (dataset.has_labels()) out += "," + quote_csv(dataset.labels()[i]);
    if (dataset.has_noise_flags())
      out += dataset.noise_flags()[i] ? ",1" : ",0";
    out.push_back('\n');
  }
  return out;
}

void write_dataset_csv(const std::string& path, const Dataset& dataset) {
  write_text_file(path, dataset_csv_string(dataset));
}

std::string field_csv_string(const PValueField& field) {
  const Lattice& lattice = field.lattice();
  const int d = lattice.dim();

  std::string out = "index";
  for (int a = 0; a < d; ++a) out += ",i" + std::to_string(a);
  for (int a = 0; a < d; ++a) out += ",x" + std::to_string(a);
  out += ",p_num,p_den,p\n";

  std::vector<int32_t> mi(d);
  std::vector<double> coords(d);
  for (int64_t i = 0; i < field.size(); ++i) {
    lattice.multi_index(i, mi);
    lattice.node_coordinates(i, coords);
    out += std::to_string(i);
    for (int a = 0; a < d; ++a) out += "," + std::to_string(mi[a]);
    for (int a = 0; a < d; ++a) out += "," + format_double(coords[a]);
    out += "," + std::to_string(field.count(i));
    out += "," + std::to_string(field.denominator());
    out += "," + format_double(field.p(i));
    out.push_back('\n');
  }
  return out;
}

void write_field_csv(const std::string& path, const PValueField& field) {
  write_text_file(path, field_csv_string(field));
}

PValueField parse_field_csv(const std::string& text, const std::string& context) {
  const CsvTable table = parse_csv(text, context);

  int d = 0;
  while (table.column("i" + std::to_string(d)) >= 0) ++d;
  if (d == 0 || table.column("index") != 0)
    fail(errc::parse, context + ": not a p-value field file");
  std::vector<std::string> expected = {"index"};
  for (int a = 0; a < d; ++a) expected.push_back("i" + std::to_string(a));
  for (int a = 0; a < d; ++a) expected.push_back("x" + std::to_string(a));
  expected.insert(expected.end(), {"p_num", "p_den", "p"});
  if (table.header != expected) fail(errc::parse, context + ": unexpected field columns");

  const int64_t u = static_cast<int64_t>(table.rows.size());
  if (u == 0) fail(errc::parse, context + ": field has no nodes");

  std::vector<int32_t> resolution(d, 0);
  std::vector<int32_t> counts(u);
  int32_t denominator = 0;
  for (int64_t r = 0; r < u; ++r) {
    const std::string where = context + " row " + std::to_string(r + 2);
    if (parse_int(table.rows[r][0], where) != r)
      fail(errc::parse, where + ": node rows must appear in index order");
    for (int a = 0; a < d; ++a) {
      const auto i = static_cast<int32_t>(parse_int(table.rows[r][1 + a], where));
      if (i < 0) fail(errc::parse, where + ": negative multi-index");
      resolution[a] = std::max(resolution[a], i + 1);
    }
    counts[r] = static_cast<int32_t>(parse_int(table.rows[r][1 + 2 * d], where));
    const auto den = static_cast<int32_t>(parse_int(table.rows[r][2 + 2 * d], where));
    if (r == 0)
      denominator = den;
    else if (den != denominator)
      fail(errc::parse, where + ": inconsistent p-value denominator");
  }

  int64_t expected_u = 1;
  for (int a = 0; a < d; ++a) expected_u *= resolution[a];
  if (expected_u != u)
    fail(errc::parse, context + ": node count does not fill the lattice");

  std::vector<double> lower(d), upper(d);
  for (int a = 0; a < d; ++a) {
    lower[a] = parse_double(table.rows[0][1 + d + a], context + " row 2");
    upper[a] = parse_double(table.rows[u - 1][1 + d + a],
                            context + " row " + std::to_string(u + 1));
  }

  try {
    Lattice lattice(std::move(resolution), std::move(lower), std::move(upper));
    return PValueField(std::move(lattice), std::move(counts), denominator);
  } catch (const Error& e) {
    fail(errc::parse, context + ": " + e.what());
  }
}

PValueField read_field_csv(const std::string& path) {
  return parse_field_csv(read_text_file(path), path);
}

void write_cluster_counts_csv(const std::string& path,
                              const std::vector<std::pair<double, int32_t>>& counts) {
  std::string out = "eps,clusters\n";
  for (const auto& [eps, c] : counts)
    out += format_double(eps) + "," + std::to_string(c) + "\n";
  write_text_file(path, out);
}

std::string tree_doc_string(const ClusterTree& tree,
                            const std::vector<PointTrajectory>& trajectories,
                            const Dendrogram& dendrogram) {
  const auto w = static_cast<int32_t>(tree.levels.size());
  const auto n = static_cast<int64_t>(trajectories.size());

  // Split/death flags keyed by (level of the event minus one, cluster id).
  auto has_event = [](const auto& events, int32_t level, int32_t id) {
    for (const auto& e : events) {
      const int32_t who = [&] {
        if constexpr (requires { e.parent; }) return e.parent;
        else return e.cluster;
      }();
      if (e.level == level + 1 && who == id) return true;
    }
    return false;
  };

  std::string out = "mlcc-tree v1\n";
  out += "examples " + std::to_string(n) + "\n";
  out += "levels " + std::to_string(w) + "\n";

  std::vector<std::vector<int64_t>> members;
  for (int32_t t = 0; t < w; ++t) {
    const TreeLevel& level = tree.levels[t];
    out += "level " + std::to_string(t) + " eps " + format_double(level.eps) +
           " clusters " + std::to_string(level.clusters.size()) + "\n";

    members.assign(level.clusters.size(), {});
    for (int64_t i = 0; i < n; ++i) {
      const int32_t c = trajectories[i].cluster_by_level[t];
      if (c != kAnomaly) members[c].push_back(i);
    }
    for (const TreeCluster& cluster : level.clusters) {
      out += "cluster " + std::to_string(cluster.id) + " parent " +
             std::to_string(cluster.parent) + " nodes " + std::to_string(cluster.node_count) +
             " split " + (has_event(tree.splits, t, cluster.id) ? "1" : "0") + " death " +
             (has_event(tree.deaths, t, cluster.id) ? "1" : "0") + " examples " +
             std::to_string(members[cluster.id].size());
      for (int64_t i : members[cluster.id]) out += " " + std::to_string(i);
      out.push_back('\n');
    }
  }

  out += "leaf-order";
  for (int32_t i : dendrogram.leaf_order) out += " " + std::to_string(i);
  out.push_back('\n');
  out += "death-levels";
  for (int32_t v : dendrogram.death_level) out += " " + std::to_string(v);
  out.push_back('\n');
  out += "end\n";
  return out;
}

void write_tree_doc(const std::string& path, const ClusterTree& tree,
                    const std::vector<PointTrajectory>& trajectories,
                    const Dendrogram& dendrogram) {
  write_text_file(path, tree_doc_string(tree, trajectories, dendrogram));
}

}  // namespace mlcc
