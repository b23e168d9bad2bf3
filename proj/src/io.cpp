#include "prcis/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace prcis {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf.data(), ptr);
}

std::string format_double17(double value) {
  std::array<char, 40> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

// --- dictionaries ----------------------------------------------------------

std::string dictionary_to_json(const Dictionary& dict) {
  ordered_json j;
  j["source_id"] = dict.source_id;
  j["method"] = std::string(to_string(dict.method));
  j["S"] = dict.requested_size;
  j["L"] = dict.requested_length;
  if (dict.label) j["label"] = *dict.label;
  ordered_json patterns = ordered_json::array();
  for (const auto& p : dict.patterns) {
    ordered_json pj;
    pj["source_start"] = p.source_start;
    pj["values"] = p.values;
    patterns.push_back(std::move(pj));
  }
  j["patterns"] = std::move(patterns);
  return j.dump(1) + "\n";
}

Dictionary dictionary_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed dictionary JSON: ") +
                             e.what());
  }
  try {
    Dictionary dict;
    dict.source_id = j.at("source_id").get<std::string>();
    dict.method = parse_dictionary_method(j.at("method").get<std::string>());
    dict.requested_size = j.at("S").get<std::size_t>();
    dict.requested_length = j.at("L").get<std::size_t>();
    if (j.contains("label") && !j["label"].is_null()) {
      dict.label = j["label"].get<std::string>();
    }
    for (const auto& pj : j.at("patterns")) {
      Pattern p;
      p.source_id = dict.source_id;
      p.source_start = pj.at("source_start").get<std::size_t>();
      p.values = pj.at("values").get<std::vector<double>>();
      if (p.values.empty()) {
        throw std::runtime_error("dictionary '" + dict.source_id +
                                 "' has an empty pattern");
      }
      dict.patterns.push_back(std::move(p));
    }
    if (dict.patterns.empty()) {
      throw std::runtime_error("dictionary '" + dict.source_id +
                               "' has no patterns");
    }
    return dict;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("invalid dictionary JSON: ") +
                             e.what());
  }
}

void write_dictionary(const std::filesystem::path& path, const Dictionary& dict) {
  write_text_file(path, dictionary_to_json(dict));
}

Dictionary read_dictionary(const std::filesystem::path& path) {
  try {
    return dictionary_from_json(read_text_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

// --- distance matrices -------------------------------------------------------

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::string distance_matrix_to_csv(const DistanceMatrix& matrix) {
  std::string out = "id";
  for (const auto& id : matrix.ids()) out += "," + csv_field(id);
  out += "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += csv_field(matrix.ids()[i]);
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out += "," + format_double17(matrix(i, j));
    }
    out += "\n";
  }
  return out;
}

DistanceMatrix distance_matrix_from_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line != "\r") rows.push_back(split_csv_line(line));
    pos = nl + 1;
  }
  if (rows.empty()) throw std::runtime_error("empty distance matrix CSV");
  std::vector<std::string> ids(rows.front().begin() + 1, rows.front().end());
  const std::size_t m = ids.size();
  if (rows.size() != m + 1) {
    throw std::runtime_error("distance matrix CSV has " +
                             std::to_string(rows.size() - 1) + " rows for " +
                             std::to_string(m) + " ids");
  }
  std::vector<double> values;
  values.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != m + 1 || row[0] != ids[i]) {
      throw std::runtime_error("distance matrix CSV row " +
                               std::to_string(i + 2) + " is malformed");
    }
    for (std::size_t j = 1; j <= m; ++j) {
      double v = 0.0;
      const auto& f = row[j];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw std::runtime_error("distance matrix CSV row " +
                                 std::to_string(i + 2) +
                                 ": non-numeric value '" + f + "'");
      }
      values.push_back(v);
    }
  }
  return DistanceMatrix(std::move(ids), std::move(values));
}

void write_distance_matrix(const std::filesystem::path& path,
                           const DistanceMatrix& matrix) {
  write_text_file(path, distance_matrix_to_csv(matrix));
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
  try {
    return distance_matrix_from_csv(read_text_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

// --- analytics outputs -------------------------------------------------------

std::string dendrogram_to_json(const Dendrogram& dendrogram, Linkage linkage) {
  ordered_json j;
  j["leaf_ids"] = dendrogram.leaf_ids;
  j["linkage"] = std::string(to_string(linkage));
  ordered_json merges = ordered_json::array();
  for (const auto& m : dendrogram.merges) {
    merges.push_back({{"a", m.cluster_a},
                      {"b", m.cluster_b},
                      {"height", m.height},
                      {"size", m.size}});
  }
  j["merges"] = std::move(merges);
  j["newick"] = dendrogram.newick();
  return j.dump(2) + "\n";
}

std::string report_to_json(const ClassificationReport& report) {
  ordered_json j;
  j["accuracy"] = report.accuracy;
  j["per_class"] = report.per_class;
  j["confusion"] = report.confusion;
  ordered_json preds = ordered_json::array();
  for (const auto& p : report.predictions) {
    preds.push_back({{"id", p.id},
                     {"truth", p.truth},
                     {"predicted", p.predicted},
                     {"neighbor", p.neighbor},
                     {"distance", p.distance}});
  }
  j["predictions"] = std::move(preds);
  return j.dump(2) + "\n";
}

std::string anomaly_profile_to_csv(const AnomalyProfile& profile) {
  std::string out = "index,score\n";
  for (std::size_t i = 0; i < profile.scores.size(); ++i) {
    out += std::to_string(i) + "," + format_double(profile.scores[i]) + "\n";
  }
  return out;
}

}  // namespace prcis
