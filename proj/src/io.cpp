#include "hdbscan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <tuple>

#include <json.hpp>

#include "hdbscan/error.hpp"

namespace hdbscan {

std::string format_labels(const std::vector<std::int64_t>& labels) {
  std::string out;
  out.reserve(labels.size() * 3);
  for (const auto label : labels) {
    out += std::to_string(label);
    out += '\n';
  }
  return out;
}

std::string format_condensed_json(const CondensedTree& tree) {
  std::vector<CondensedRow> rows = tree.rows;
  std::sort(rows.begin(), rows.end(), [](const CondensedRow& a, const CondensedRow& b) {
    return std::tie(a.parent, a.lambda_val, a.child) < std::tie(b.parent, b.lambda_val, b.child);
  });
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    obj["parent"] = row.parent;
    obj["child"] = row.child;
    if (std::isinf(row.lambda_val)) {
      obj["lambda_val"] = "inf";
    } else {
      obj["lambda_val"] = row.lambda_val;
    }
    obj["child_size"] = row.child_size;
    out.push_back(std::move(obj));
  }
  return out.dump() + "\n";
}

std::string format_mst_edges(const MstEdgeList& mst) {
  std::string out;
  char buffer[64];
  for (const auto& e : mst.edges) {
    std::snprintf(buffer, sizeof buffer, "%.17g", e.w);
    out += std::to_string(e.i) + ',' + std::to_string(e.j) + ',' + buffer + '\n';
  }
  return out;
}

namespace {

std::filesystem::path staging_path(const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  return tmp;
}

void stage(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = staging_path(path);
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) {
    out.close();
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw InvalidInput("failed while writing '" + path.string() + "'");
  }
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  write_files_atomic({{path, content}});
}

void write_files_atomic(const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  std::size_t staged = 0;
  auto discard = [&] {
    std::error_code ec;
    for (std::size_t i = 0; i < staged; ++i) std::filesystem::remove(staging_path(files[i].first), ec);
  };
  try {
    for (; staged < files.size(); ++staged) stage(files[staged].first, files[staged].second);
  } catch (...) {
    discard();
    throw;
  }
  for (const auto& [path, content] : files) {
    std::error_code ec;
    std::filesystem::rename(staging_path(path), path, ec);
    if (ec) {
      discard();
      throw InvalidInput("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
  }
}

}  // namespace hdbscan
