#include "hdbscan/points.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "hdbscan/error.hpp"

namespace hdbscan {

PointSet::PointSet(std::vector<double> data, std::size_t n_dims) : data_(std::move(data)), n_dims_(n_dims) {
  if (n_dims_ == 0) throw InvalidInput("point set needs at least one dimension");
  if (data_.empty()) throw InvalidInput("point set is empty");
  if (data_.size() % n_dims_ != 0) throw InvalidInput("data size is not a multiple of the dimension count");
  n_points_ = data_.size() / n_dims_;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw InvalidInput("non-finite value at point " + std::to_string(i / n_dims_) + ", coordinate " +
                         std::to_string(i % n_dims_));
    }
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidInput("point set is empty");
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& row : rows) {
    if (row.size() != d) throw InvalidInput("rows have inconsistent dimension");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return PointSet(std::move(flat), d);
}

Metric::Metric(MetricKind kind) : kind_(kind) {
  switch (kind) {
    case MetricKind::euclidean: name_ = "euclidean"; break;
    case MetricKind::manhattan: name_ = "manhattan"; break;
    case MetricKind::chebyshev: name_ = "chebyshev"; break;
    case MetricKind::custom: throw InvalidInput("use Metric::custom to supply a distance function");
  }
}

Metric Metric::custom(Function fn, std::string name) {
  if (!fn) throw InvalidInput("custom metric needs a callable");
  Metric m;
  m.kind_ = MetricKind::custom;
  m.name_ = std::move(name);
  m.fn_ = std::move(fn);
  return m;
}

Metric Metric::parse(std::string_view name) {
  if (name == "euclidean") return Metric(MetricKind::euclidean);
  if (name == "manhattan") return Metric(MetricKind::manhattan);
  if (name == "chebyshev") return Metric(MetricKind::chebyshev);
  throw InvalidInput("unknown metric '" + std::string(name) + "' (expected euclidean, manhattan or chebyshev)");
}

namespace {

template <class GapAt>
double combine_gaps(MetricKind kind, std::size_t d, GapAt gap_at) noexcept {
  double acc = 0.0;
  switch (kind) {
    case MetricKind::euclidean:
      for (std::size_t i = 0; i < d; ++i) {
        const double g = gap_at(i);
        acc += g * g;
      }
      return std::sqrt(acc);
    case MetricKind::manhattan:
      for (std::size_t i = 0; i < d; ++i) acc += gap_at(i);
      return acc;
    case MetricKind::chebyshev:
      for (std::size_t i = 0; i < d; ++i) acc = std::max(acc, gap_at(i));
      return acc;
    case MetricKind::custom:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

double Metric::box_gap(std::span<const double> lo_a, std::span<const double> hi_a, std::span<const double> lo_b,
                       std::span<const double> hi_b) const noexcept {
  return combine_gaps(kind_, lo_a.size(), [&](std::size_t i) {
    return std::max({lo_b[i] - hi_a[i], lo_a[i] - hi_b[i], 0.0});
  });
}

double Metric::point_box_gap(std::span<const double> p, std::span<const double> lo,
                             std::span<const double> hi) const noexcept {
  return combine_gaps(kind_, p.size(), [&](std::size_t i) { return std::max({lo[i] - p[i], p[i] - hi[i], 0.0}); });
}

double distance(const Metric& metric, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidInput("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  return metric(a, b);
}

namespace {

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  const bool has_comma = line.find(',') != std::string_view::npos;
  std::size_t pos = 0;
  if (has_comma) {
    while (true) {
      const std::size_t next = line.find(',', pos);
      std::string_view cell = line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
      const auto first = cell.find_first_not_of(" \t\r");
      const auto last = cell.find_last_not_of(" \t\r");
      cells.push_back(first == std::string_view::npos ? std::string_view{} : cell.substr(first, last - first + 1));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
  } else {
    while (pos < line.size()) {
      pos = line.find_first_not_of(" \t\r", pos);
      if (pos == std::string_view::npos) break;
      const std::size_t end = std::min(line.find_first_of(" \t\r", pos), line.size());
      cells.push_back(line.substr(pos, end - pos));
      pos = end;
    }
  }
  return cells;
}

bool parse_double(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

bool is_blank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

}  // namespace

PointSet parse_points(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string_view content;
  };
  std::vector<Line> lines;
  std::size_t pos = 0;
  std::size_t number = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find('\n', pos);
    const std::string_view line = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    ++number;
    if (!is_blank(line)) lines.push_back({number, line});
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (lines.empty()) throw InvalidInput("input contains no points");

  std::size_t start = 0;
  if (lines.size() > 1) {
    double ignored = 0.0;
    for (auto cell : split_cells(lines.front().content)) {
      if (!parse_double(cell, ignored)) {
        start = 1;
        break;
      }
    }
  }

  std::vector<double> data;
  std::size_t n_dims = 0;
  for (std::size_t l = start; l < lines.size(); ++l) {
    const auto cells = split_cells(lines[l].content);
    if (n_dims == 0) n_dims = cells.size();
    if (cells.size() != n_dims) {
      throw ParseError(lines[l].number,
                       "expected " + std::to_string(n_dims) + " columns, found " + std::to_string(cells.size()));
    }
    for (auto cell : cells) {
      double value = 0.0;
      if (!parse_double(cell, value)) throw ParseError(lines[l].number, "non-numeric cell '" + std::string(cell) + "'");
      if (!std::isfinite(value)) throw ParseError(lines[l].number, "non-finite value '" + std::string(cell) + "'");
      data.push_back(value);
    }
  }
  return PointSet(std::move(data), n_dims);
}

PointSet load_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open input file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_points(buffer.str());
}

Deduplicated deduplicate(const PointSet& points) {
  const std::size_t d = points.dims();
  std::map<std::vector<double>, std::size_t> seen;
  std::vector<double> unique;
  std::vector<std::size_t> representative(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = points[i];
    std::vector<double> key(row.begin(), row.end());
    // -0.0 and 0.0 are the same coordinate.
    for (auto& v : key) v = v + 0.0;
    const auto [it, inserted] = seen.emplace(std::move(key), unique.size() / d);
    if (inserted) unique.insert(unique.end(), row.begin(), row.end());
    representative[i] = it->second;
  }
  return {PointSet(std::move(unique), d), std::move(representative)};
}

}  // namespace hdbscan
