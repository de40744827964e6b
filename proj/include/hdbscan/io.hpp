#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hdbscan/boruvka.hpp"
#include "hdbscan/hierarchy.hpp"

namespace hdbscan {

/// One integer per line, in point order.
std::string format_labels(const std::vector<std::int64_t>& labels);

/// JSON array of {"parent","child","lambda_val","child_size"} objects sorted
/// by (parent, lambda_val, child); infinite lambda is written as "inf".
std::string format_condensed_json(const CondensedTree& tree);

/// One edge per line as "i,j,w" with w at 17 significant digits.
std::string format_mst_edges(const MstEdgeList& mst);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed write never leaves partial output. Throws InvalidInput on I/O errors.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// All-or-nothing version for several outputs: every file is staged before
/// any target is replaced.
void write_files_atomic(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

}  // namespace hdbscan
