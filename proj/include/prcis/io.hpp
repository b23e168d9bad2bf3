#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "prcis/analytics.hpp"
#include "prcis/dictionary.hpp"
#include "prcis/distance.hpp"

namespace prcis {

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

/// 17 significant digits, the fixed-width form used for matrix files.
std::string format_double17(double value);

// Dictionary JSON:
//   {"source_id", "method", "S", "L", ["label"],
//    "patterns": [{"source_start", "values": [...]}, ...]}
std::string dictionary_to_json(const Dictionary& dict);
Dictionary dictionary_from_json(std::string_view text);
void write_dictionary(const std::filesystem::path& path, const Dictionary& dict);
Dictionary read_dictionary(const std::filesystem::path& path);

// Distance matrix CSV: header row "id,<id_1>,...,<id_m>", then one row per id
// with its name in the first column.
std::string distance_matrix_to_csv(const DistanceMatrix& matrix);
DistanceMatrix distance_matrix_from_csv(std::string_view text);
void write_distance_matrix(const std::filesystem::path& path,
                           const DistanceMatrix& matrix);
DistanceMatrix read_distance_matrix(const std::filesystem::path& path);

/// {"leaf_ids", "linkage", "merges": [{"a","b","height","size"}], "newick"}
std::string dendrogram_to_json(const Dendrogram& dendrogram, Linkage linkage);

/// {"accuracy", "per_class", "confusion", "predictions"}
std::string report_to_json(const ClassificationReport& report);

/// "index,score" header then one row per position.
std::string anomaly_profile_to_csv(const AnomalyProfile& profile);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace prcis
