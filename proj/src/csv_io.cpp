#include "tailix/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tailix/version.hpp"

namespace tailix {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == delimiter) {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& cell, double* out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

IngestResult ingest_csv(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + spec.path + "'");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (in.bad()) raise(ErrorCode::IoError, "read failure on '" + spec.path + "'");
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) raise(ErrorCode::ParseError, "'" + spec.path + "' is empty");

  // Resolve the column and decide whether the first row is a header.
  std::size_t column = 0;
  bool had_header = false;
  const auto first_cells = split_line(lines.front(), spec.delimiter);

  if (const auto* name = std::get_if<std::string>(&spec.column)) {
    std::size_t found = first_cells.size();
    for (std::size_t i = 0; i < first_cells.size(); ++i) {
      if (trim(first_cells[i]) == *name) found = i;
    }
    if (found == first_cells.size()) {
      raise(ErrorCode::ParseError,
            "column '" + *name + "' not found in the header of '" + spec.path + "'");
    }
    if (spec.header == DatasetSpec::HeaderMode::No) {
      raise(ErrorCode::InvalidArgument, "column selected by name requires a header row");
    }
    column = found;
    had_header = true;
  } else {
    const auto idx = std::get<std::int64_t>(spec.column);
    if (idx < 0) raise(ErrorCode::InvalidArgument, "column index must be non-negative");
    column = static_cast<std::size_t>(idx);
    switch (spec.header) {
      case DatasetSpec::HeaderMode::Yes:
        had_header = true;
        break;
      case DatasetSpec::HeaderMode::No:
        had_header = false;
        break;
      case DatasetSpec::HeaderMode::Auto: {
        double ignored;
        had_header = column >= first_cells.size() || !parse_number(first_cells[column], &ignored);
        break;
      }
    }
  }

  if (spec.threshold && !(*spec.threshold > 0.0)) {
    raise(ErrorCode::InvalidArgument, "threshold must be positive");
  }

  std::vector<double> values;
  std::int64_t rows_total = 0;
  for (std::size_t li = had_header ? 1 : 0; li < lines.size(); ++li) {
    const std::string& raw_line = lines[li];
    if (trim(raw_line).empty()) continue;
    const auto line_no = std::to_string(li + 1);
    const auto cells = split_line(raw_line, spec.delimiter);
    if (column >= cells.size()) {
      raise(ErrorCode::ParseError,
            "line " + line_no + ": expected at least " + std::to_string(column + 1) + " columns");
    }
    double v;
    if (!parse_number(cells[column], &v)) {
      raise(ErrorCode::ParseError, "line " + line_no + ": '" + trim(cells[column]) +
                                       "' is not a number");
    }
    if (!std::isfinite(v) || v <= 0.0) {
      raise(ErrorCode::NonPositiveValue,
            "line " + line_no + ": value " + trim(cells[column]) + " is not strictly positive");
    }
    ++rows_total;
    if (!spec.threshold || v >= *spec.threshold) values.push_back(v);
  }

  const auto rows_kept = static_cast<std::int64_t>(values.size());
  if (rows_kept < 2) {
    raise(ErrorCode::EmptyAfterFilter,
          "fewer than two observations remain after filtering (" + std::to_string(rows_kept) + ")");
  }
  return IngestResult{RawSample(std::move(values)), rows_total, rows_kept, had_header};
}

std::string format_double(double v) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

std::string series_csv_string(const EstimateSeries& series) {
  std::string out = "k,estimator_tag,value,defined\n";
  for (const auto& point : series.points) {
    out += std::to_string(point.k);
    out += ',';
    out += series.estimator_tag;
    out += ',';
    if (point.value) out += format_double(*point.value);
    out += ',';
    out += point.value ? '1' : '0';
    out += '\n';
  }
  return out;
}

void write_series_csv(const EstimateSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  out << series_csv_string(series);
  if (!out) raise(ErrorCode::IoError, "write failure on '" + path + "'");
}

RunManifest make_manifest(std::string command,
                          std::vector<std::pair<std::string, std::string>> parameters,
                          std::uint64_t base_seed) {
  RunManifest manifest;
  manifest.command = std::move(command);
  manifest.parameters = std::move(parameters);
  manifest.base_seed = base_seed;
  manifest.tool_version = kVersion;

  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  manifest.timestamp = buf;
  return manifest;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : manifest.parameters) params[key] = value;

  nlohmann::json doc{
      {"command", manifest.command},
      {"parameters", params},
      {"base_seed", manifest.base_seed},
      {"tool_version", manifest.tool_version},
      {"timestamp", manifest.timestamp},
      {"outputs", manifest.outputs},
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) raise(ErrorCode::IoError, "write failure on '" + path + "'");
}

}  // namespace tailix
