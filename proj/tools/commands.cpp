#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "prcis/io.hpp"
#include "prcis/matrix_profile.hpp"
#include "prcis/parallel.hpp"
#include "prcis/series.hpp"

namespace prcis::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kDictSuffix = ".dict.json";

void check_dictionary_params(std::size_t size, std::size_t length,
                             DictionaryMethod method,
                             const std::optional<std::uint64_t>& seed,
                             double delta_factor) {
  if (method == DictionaryMethod::manual) return;
  if (size < 1) throw UsageError("--size must be at least 1");
  if (length < 2) throw UsageError("--length must be at least 2");
  if (method == DictionaryMethod::random && !seed) {
    throw UsageError("--seed is required for --method random");
  }
  if (method == DictionaryMethod::yeh &&
      !(delta_factor > 0.0 && delta_factor < 1.0)) {
    throw UsageError("--delta-factor must lie in (0, 1)");
  }
}

std::vector<TimeSeries> load_inputs(const std::optional<fs::path>& manifest,
                                    const std::optional<fs::path>& series) {
  if (manifest && series) {
    throw UsageError("give either --manifest or --series, not both");
  }
  if (manifest) return load_manifest(*manifest);
  if (series) return {load_series(*series)};
  throw UsageError("one of --manifest or --series is required");
}

std::vector<Dictionary> read_dictionary_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("dictionary directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > std::string(kDictSuffix).size() &&
        name.ends_with(kDictSuffix)) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Dictionary> dicts;
  for (const auto& f : files) dicts.push_back(read_dictionary(f));
  return dicts;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> parse_ranges(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const auto colon = item.find(':');
    std::size_t start = 0, length = 0;
    bool ok = colon != std::string::npos;
    if (ok) {
      const char* b = item.data();
      const auto r1 = std::from_chars(b, b + colon, start);
      const auto r2 = std::from_chars(b + colon + 1, b + item.size(), length);
      ok = r1.ec == std::errc() && r1.ptr == b + colon &&
           r2.ec == std::errc() && r2.ptr == b + item.size() && length > 0;
    }
    if (!ok) throw UsageError("malformed range '" + item + "', want start:length");
    out.emplace_back(start, length);
    pos = comma + 1;
  }
  if (out.empty()) throw UsageError("--ranges needs at least one start:length");
  return out;
}

Dictionary build_dictionary(const TimeSeries& series, const DictOptions& opts) {
  switch (opts.method) {
    case DictionaryMethod::yeh:
      return yeh_dictionary(series, opts.size, opts.length, opts.delta_factor,
                            nullptr, opts.workers);
    case DictionaryMethod::random:
      return random_dictionary(series, opts.size, opts.length, *opts.seed);
    case DictionaryMethod::manual:
      return manual_dictionary(series, opts.ranges);
  }
  throw std::logic_error("unhandled dictionary method");
}

std::vector<fs::path> cmd_dict(const DictOptions& opts) {
  check_dictionary_params(opts.size, opts.length, opts.method, opts.seed,
                          opts.delta_factor);
  if (opts.method == DictionaryMethod::manual && opts.ranges.empty()) {
    throw UsageError("--method manual needs --ranges");
  }
  const auto inputs = load_inputs(opts.manifest, opts.series);
  fs::create_directories(opts.out_dir);

  ordered_json summary;
  summary["command"] = "dict";
  summary["method"] = std::string(to_string(opts.method));
  if (opts.method == DictionaryMethod::manual) {
    ordered_json ranges = ordered_json::array();
    for (const auto& [s, l] : opts.ranges) ranges.push_back({s, l});
    summary["ranges"] = std::move(ranges);
  } else {
    summary["S"] = opts.size;
    summary["L"] = opts.length;
  }
  if (opts.method == DictionaryMethod::yeh) {
    summary["delta_factor"] = opts.delta_factor;
  }
  if (opts.seed) summary["seed"] = *opts.seed;
  summary["input"] = opts.manifest ? opts.manifest->string()
                                   : opts.series->string();
  ordered_json outputs = ordered_json::array();

  std::vector<fs::path> paths;
  for (const auto& series : inputs) {
    const auto dict = build_dictionary(series, opts);
    const auto path = opts.out_dir / (series.id() + kDictSuffix);
    write_dictionary(path, dict);
    paths.push_back(path);
    outputs.push_back({{"id", series.id()},
                       {"file", path.filename().string()},
                       {"length", series.size()},
                       {"patterns", dict.patterns.size()}});
  }
  summary["dictionaries"] = std::move(outputs);
  write_text_file(opts.out_dir / "run_summary.json", summary.dump(2) + "\n");
  return paths;
}

void cmd_dist(const DistOptions& opts) {
  const auto dicts = read_dictionary_dir(opts.dict_dir);
  if (dicts.size() < 2) {
    throw std::runtime_error("need at least 2 dictionary files in " +
                             opts.dict_dir.string());
  }
  write_distance_matrix(opts.out, distance_matrix(dicts, opts.workers));
}

void cmd_cluster(const ClusterOptions& opts) {
  const auto matrix = read_distance_matrix(opts.matrix);
  const auto dendrogram = hac(matrix, opts.linkage);
  write_text_file(opts.out, dendrogram_to_json(dendrogram, opts.linkage));
}

void cmd_classify(const ClassifyOptions& opts) {
  const auto matrix = read_distance_matrix(opts.matrix);
  std::map<std::string, std::string> label_of;
  for (const auto& s : load_manifest(opts.manifest)) {
    if (!s.label()) {
      throw std::runtime_error("manifest entry '" + s.id() + "' has no label");
    }
    label_of[s.id()] = *s.label();
  }
  std::vector<std::string> labels;
  for (const auto& id : matrix.ids()) {
    const auto it = label_of.find(id);
    if (it == label_of.end()) {
      throw std::runtime_error("matrix id '" + id + "' is not in the manifest");
    }
    labels.push_back(it->second);
  }
  write_text_file(opts.out, report_to_json(loo_1nn(matrix, labels)));
}

void cmd_anomaly(const AnomalyOptions& opts) {
  if (opts.smooth_window && *opts.smooth_window < 1) {
    throw UsageError("--smooth-window must be at least 1");
  }
  const auto dict = read_dictionary(opts.dict);
  const auto series = load_series(opts.series);
  const auto profile =
      prcis_dist_prof(dict, series, opts.smooth_window, opts.workers);
  write_text_file(opts.out, anomaly_profile_to_csv(profile));
}

void cmd_sweep(const SweepOptions& opts) {
  if (opts.sizes.empty()) throw UsageError("--sizes needs at least one value");
  if (opts.method == DictionaryMethod::manual) {
    throw UsageError("sweep supports --method yeh or random");
  }
  for (auto s : opts.sizes) {
    check_dictionary_params(s, opts.length, opts.method, opts.seed,
                            opts.delta_factor);
  }
  const auto inputs = load_manifest(opts.manifest);
  if (inputs.size() < 2) throw std::runtime_error("sweep needs at least 2 series");

  // The matrix profile does not depend on S; compute it once per series.
  std::vector<MatrixProfile> profiles;
  if (opts.method == DictionaryMethod::yeh) {
    profiles.resize(inputs.size());
    parallel_for(inputs.size(), opts.workers, [&](std::size_t i) {
      profiles[i] = matrix_profile(inputs[i], opts.length);
    });
  }

  std::string csv = "S,accuracy\n";
  for (const auto size : opts.sizes) {
    std::vector<Dictionary> dicts(inputs.size());
    parallel_for(inputs.size(), opts.workers, [&](std::size_t i) {
      dicts[i] = opts.method == DictionaryMethod::yeh
                     ? yeh_dictionary(inputs[i], profiles[i], size,
                                      opts.delta_factor)
                     : random_dictionary(inputs[i], size, opts.length,
                                         *opts.seed);
    });
    const auto report = loo_1nn(dicts, opts.workers);
    csv += std::to_string(size) + "," + format_double(report.accuracy) + "\n";
  }
  write_text_file(opts.out, csv);
}

int run(int argc, const char* const* argv) {
  CLI::App app{"PRCIS: dictionary-based distance for long time series"};
  app.require_subcommand(1);

  DictOptions dict_opts;
  std::string dict_method = "yeh";
  std::string ranges_text;
  std::string manifest_text, series_text;
  auto* dict = app.add_subcommand("dict", "Build one dictionary per series");
  dict->add_option("--manifest", manifest_text, "TSV manifest: path<TAB>label");
  dict->add_option("--series", series_text, "Single series file");
  dict->add_option("--out", dict_opts.out_dir, "Output directory")->required();
  dict->add_option("-S,--size", dict_opts.size, "Dictionary size S");
  dict->add_option("-L,--length", dict_opts.length, "Pattern length L");
  dict->add_option("--method", dict_method, "yeh, random or manual")
      ->check(CLI::IsMember({"yeh", "random", "manual"}));
  dict->add_option("--ranges", ranges_text, "Manual ranges start:len,...");
  dict->add_option("--seed", dict_opts.seed, "PRNG seed (random method)");
  dict->add_option("--delta-factor", dict_opts.delta_factor,
                   "Removal threshold factor for Yeh dictionaries");
  dict->add_option("--workers", dict_opts.workers, "Worker threads");

  DistOptions dist_opts;
  auto* dist = app.add_subcommand("dist", "PRCIS distance matrix");
  dist->add_option("--dict-dir", dist_opts.dict_dir, "Dictionary directory")
      ->required();
  dist->add_option("--out", dist_opts.out, "Output CSV")->required();
  dist->add_option("--workers", dist_opts.workers, "Worker threads");

  ClusterOptions cluster_opts;
  std::string linkage = "complete";
  auto* cluster = app.add_subcommand("cluster", "Hierarchical clustering");
  cluster->add_option("--matrix", cluster_opts.matrix, "Distance matrix CSV")
      ->required();
  cluster->add_option("--out", cluster_opts.out, "Output JSON")->required();
  cluster->add_option("--linkage", linkage, "single, complete or average")
      ->check(CLI::IsMember({"single", "complete", "average"}));

  ClassifyOptions classify_opts;
  auto* classify = app.add_subcommand("classify", "Leave-one-out 1NN");
  classify->add_option("--matrix", classify_opts.matrix, "Distance matrix CSV")
      ->required();
  classify->add_option("--manifest", classify_opts.manifest, "Labeled manifest")
      ->required();
  classify->add_option("--out", classify_opts.out, "Output JSON")->required();

  AnomalyOptions anomaly_opts;
  auto* anomaly = app.add_subcommand("anomaly", "PRCIS distance profile");
  anomaly->add_option("--dict", anomaly_opts.dict, "Dictionary JSON")->required();
  anomaly->add_option("--series", anomaly_opts.series, "Series file")->required();
  anomaly->add_option("--out", anomaly_opts.out, "Output CSV")->required();
  anomaly->add_option("--smooth-window", anomaly_opts.smooth_window,
                      "Moving-mean window (default: dictionary L)");
  anomaly->add_option("--workers", anomaly_opts.workers, "Worker threads");

  SweepOptions sweep_opts;
  std::string sweep_method = "yeh";
  auto* sweep = app.add_subcommand("sweep", "LOO accuracy versus dictionary size");
  sweep->add_option("--manifest", sweep_opts.manifest, "Labeled manifest")
      ->required();
  sweep->add_option("--sizes", sweep_opts.sizes, "Comma-separated S values")
      ->delimiter(',')
      ->required();
  sweep->add_option("-L,--length", sweep_opts.length, "Pattern length L")
      ->required();
  sweep->add_option("--method", sweep_method, "yeh or random")
      ->check(CLI::IsMember({"yeh", "random"}));
  sweep->add_option("--seed", sweep_opts.seed, "PRNG seed (random method)");
  sweep->add_option("--delta-factor", sweep_opts.delta_factor,
                    "Removal threshold factor for Yeh dictionaries");
  sweep->add_option("--out", sweep_opts.out, "Output CSV")->required();
  sweep->add_option("--workers", sweep_opts.workers, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cerr, std::cerr);
  }

  try {
    if (*dict) {
      if (!manifest_text.empty()) dict_opts.manifest = manifest_text;
      if (!series_text.empty()) dict_opts.series = series_text;
      dict_opts.method = parse_dictionary_method(dict_method);
      if (!ranges_text.empty()) dict_opts.ranges = parse_ranges(ranges_text);
      cmd_dict(dict_opts);
    } else if (*dist) {
      cmd_dist(dist_opts);
    } else if (*cluster) {
      cluster_opts.linkage = parse_linkage(linkage);
      cmd_cluster(cluster_opts);
    } else if (*classify) {
      cmd_classify(classify_opts);
    } else if (*anomaly) {
      cmd_anomaly(anomaly_opts);
    } else if (*sweep) {
      sweep_opts.method = parse_dictionary_method(sweep_method);
      cmd_sweep(sweep_opts);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace prcis::cli
