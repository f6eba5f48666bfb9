#ifndef TAILIX_CSV_IO_HPP
#define TAILIX_CSV_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tailix/estimators.hpp"
#include "tailix/sample.hpp"

namespace tailix {

/**
 * How to read a one-column-of-interest CSV dataset. The column may be
 * selected by 0-based index or by header name; with HeaderMode::Auto the
 * first row is treated as a header when its selected cell does not parse
 * as a number. An optional threshold keeps only values >= threshold.
 */
struct DatasetSpec {
  enum class HeaderMode { Auto, Yes, No };

  std::string path;
  std::variant<std::int64_t, std::string> column = std::int64_t{0};
  char delimiter = ',';
  HeaderMode header = HeaderMode::Auto;
  std::optional<double> threshold;
};

struct IngestResult {
  RawSample sample;
  std::int64_t rows_total = 0;  // data rows read (header excluded)
  std::int64_t rows_kept = 0;   // after threshold filtering
  bool had_header = false;
};

// Parses the dataset. Malformed rows raise ParseError naming the line,
// non-positive values raise NonPositiveValue naming the line, and fewer
// than two values after filtering raises EmptyAfterFilter.
IngestResult ingest_csv(const DatasetSpec& spec);

// Shortest decimal representation that parses back to the identical
// double ('.' decimal separator, no locale).
std::string format_double(double v);

/**
 * Writes a series as CSV with header `k,estimator_tag,value,defined`.
 * Undefined points serialize with an empty value field and defined = 0.
 * UTF-8, LF line endings, full round-trip precision.
 */
void write_series_csv(const EstimateSeries& series, const std::string& path);

// Serialized form of write_series_csv (used for byte-level comparisons).
std::string series_csv_string(const EstimateSeries& series);

/**
 * Run provenance written next to every command's outputs. Re-running the
 * recorded command with the recorded parameters reproduces all output
 * payloads byte for byte; the timestamp is outside that contract.
 */
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t base_seed = 0;
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<std::string> outputs;
};

RunManifest make_manifest(std::string command,
                          std::vector<std::pair<std::string, std::string>> parameters,
                          std::uint64_t base_seed);

void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace tailix

#endif  // TAILIX_CSV_IO_HPP
