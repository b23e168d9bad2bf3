#include "prcis/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "prcis/io.hpp"

namespace prcis {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_missing_token(std::string_view token) {
  if (token.empty()) return true;
  if (token.size() != 3) return false;
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return lower == "nan";
}

struct RawSample {
  std::optional<double> value;
  std::size_t line;
  bool blank = false;
};

std::vector<double> repair_gaps(const std::vector<RawSample>& raw,
                                std::size_t max_gap, const std::string& id) {
  const std::size_t n = raw.size();
  std::vector<double> out(n);
  std::size_t i = 0;
  while (i < n) {
    if (raw[i].value) {
      out[i] = *raw[i].value;
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < n && !raw[end].value) ++end;
    const std::size_t run = end - i;
    if (i == 0 && end == n) {
      throw IngestError(id + ": series contains no observed values");
    }
    if (run > max_gap) {
      std::ostringstream msg;
      msg << id << ": gap of " << run << " missing samples at sample " << i
          << " (line " << raw[i].line << ") exceeds limit " << max_gap;
      throw IngestError(msg.str());
    }
    if (i == 0) {
      std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(end),
                *raw[end].value);
    } else if (end == n) {
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(i), out.end(),
                out[i - 1]);
    } else {
      const double left = out[i - 1];
      const double right = *raw[end].value;
      const double span = static_cast<double>(run + 1);
      for (std::size_t k = i; k < end; ++k) {
        const double frac = static_cast<double>(k - i + 1) / span;
        out[k] = left + (right - left) * frac;
      }
    }
    i = end;
  }
  return out;
}

}  // namespace

TimeSeries::TimeSeries(std::string id, std::vector<double> values,
                       std::optional<std::string> label,
                       std::string sample_note)
    : id_(std::move(id)),
      values_(std::move(values)),
      label_(std::move(label)),
      sample_note_(std::move(sample_note)) {
  if (values_.empty()) {
    throw std::invalid_argument("time series '" + id_ + "' is empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("time series '" + id_ +
                                  "' has a non-finite value at index " +
                                  std::to_string(i));
    }
  }
}

TimeSeries TimeSeries::with_label(std::optional<std::string> label) const {
  TimeSeries copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

Subsequence::Subsequence(const TimeSeries& parent, std::size_t start,
                         std::size_t length)
    : parent_id_(parent.id()), start_(start) {
  if (length == 0 || start > parent.size() || length > parent.size() - start) {
    throw std::out_of_range("subsequence [" + std::to_string(start) + ", +" +
                            std::to_string(length) + ") outside series '" +
                            parent.id() + "' of length " +
                            std::to_string(parent.size()));
  }
  const auto slice = parent.values().subspan(start, length);
  values_.assign(slice.begin(), slice.end());
}

TimeSeries parse_series(std::string_view text, std::string id,
                        const IngestOptions& options) {
  std::vector<RawSample> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const bool last = nl == std::string_view::npos;
    std::string_view line =
        text.substr(pos, last ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = last ? text.size() + 1 : nl + 1;
    if (last && trim(line).empty()) break;  // newline-terminated final line

    const std::string_view token = trim(line);
    if (!token.empty() && token.front() == '#') continue;
    if (is_missing_token(token)) {
      raw.push_back({std::nullopt, line_no, token.empty()});
      continue;
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() ||
        !std::isfinite(value)) {
      throw IngestError(id + ": non-numeric token '" + std::string(token) +
                        "' on line " + std::to_string(line_no));
    }
    raw.push_back({value, line_no});
  }
  // Blank lines trailing the last sample are formatting, not data.
  while (!raw.empty() && raw.back().blank) {
    raw.pop_back();
  }
  if (raw.empty()) throw IngestError(id + ": no samples");

  auto values = repair_gaps(raw, options.max_gap, id);
  return TimeSeries(options.id.value_or(std::move(id)), std::move(values),
                    options.label);
}

TimeSeries load_series(const std::filesystem::path& path,
                       const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open series file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_series(buf.str(), options.id.value_or(path.stem().string()),
                      options);
}

void write_series(const std::filesystem::path& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write series file " + path.string());
  for (double v : series.values()) out << format_double(v) << '\n';
}

std::vector<TimeSeries> load_manifest(const std::filesystem::path& path,
                                      const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open manifest " + path.string());
  const auto base = path.parent_path();

  std::vector<TimeSeries> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    const std::string_view file =
        trim(tab == std::string_view::npos ? view : view.substr(0, tab));
    std::optional<std::string> label;
    if (tab != std::string_view::npos) {
      const auto l = trim(view.substr(tab + 1));
      if (!l.empty()) label = std::string(l);
    }
    std::filesystem::path series_path{std::string(file)};
    if (series_path.is_relative()) series_path = base / series_path;
    if (!std::filesystem::exists(series_path)) {
      throw IngestError(path.string() + ":" + std::to_string(line_no) +
                        ": referenced file not found: " +
                        series_path.string());
    }
    IngestOptions per_file = options;
    per_file.id.reset();
    per_file.label = label;
    auto series = load_series(series_path, per_file);
    if (!seen.insert(series.id()).second) {
      throw IngestError(path.string() + ":" + std::to_string(line_no) +
                        ": duplicate series id '" + series.id() + "'");
    }
    out.push_back(std::move(series));
  }
  return out;
}

double mean(std::span<const double> x) {
  long double sum = 0.0L;
  for (double v : x) sum += v;
  return static_cast<double>(sum / static_cast<long double>(x.size()));
}

double population_stddev(std::span<const double> x) {
  const double mu = mean(x);
  long double acc = 0.0L;
  for (double v : x) {
    const long double d = static_cast<long double>(v) - mu;
    acc += d * d;
  }
  return std::sqrt(static_cast<double>(acc / static_cast<long double>(x.size())));
}

std::vector<double> znormalize(std::span<const double> x) {
  std::vector<double> out(x.size(), 0.0);
  if (x.empty()) return out;
  const double mu = mean(x);
  const double sigma = population_stddev(x);
  if (sigma < kFlatEpsilon) return out;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mu) / sigma;
  return out;
}

}  // namespace prcis
