#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tailix/commands.hpp"
#include "tailix/csv_io.hpp"
#include "tailix/sampling.hpp"

using namespace tailix;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tailix_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int counter() {
    static int c = 0;
    return c++;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("ingest with header autodetection and thresholds") {
  TempDir dir;
  const std::string path = dir.file("losses.csv");
  write_file(path, "loss\n2.5\n0.8\n1.5\n3.5\n");

  DatasetSpec spec;
  spec.path = path;
  IngestResult result = ingest_csv(spec);
  CHECK(result.had_header);
  CHECK(result.rows_total == 4);
  CHECK(result.rows_kept == 4);
  CHECK(result.sample.size() == 4);

  spec.threshold = 1.0;
  IngestResult filtered = ingest_csv(spec);
  CHECK(filtered.rows_total == 4);
  CHECK(filtered.rows_kept == 3);  // keeps values >= 1.0

  spec.threshold = 100.0;
  CHECK_THROWS_AS(ingest_csv(spec), Error);
  try {
    ingest_csv(spec);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyAfterFilter);
  }
}

TEST_CASE("ingest without header, by index and by name") {
  TempDir dir;
  const std::string bare = dir.file("bare.csv");
  write_file(bare, "1.5\n2.5\n3.5\n");
  DatasetSpec spec;
  spec.path = bare;
  IngestResult result = ingest_csv(spec);
  CHECK(!result.had_header);
  CHECK(result.rows_total == 3);

  const std::string multi = dir.file("multi.csv");
  write_file(multi, "date;loss;region\n1980;2.5;1\n1981;1.25;2\n1982;4.0;1\n");
  DatasetSpec by_name;
  by_name.path = multi;
  by_name.column = std::string("loss");
  by_name.delimiter = ';';
  IngestResult named = ingest_csv(by_name);
  CHECK(named.sample.size() == 3);
  CHECK(named.sample.values()[1] == 1.25);

  DatasetSpec by_index = by_name;
  by_index.column = std::int64_t{1};
  IngestResult indexed = ingest_csv(by_index);
  CHECK(indexed.sample.values()[2] == 4.0);

  DatasetSpec missing = by_name;
  missing.column = std::string("nope");
  CHECK_THROWS_AS(ingest_csv(missing), Error);
}

TEST_CASE("ingest errors carry line numbers") {
  TempDir dir;
  const std::string path = dir.file("bad.csv");
  write_file(path, "loss\n2.5\nabc\n1.5\n");
  DatasetSpec spec;
  spec.path = path;
  try {
    ingest_csv(spec);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  const std::string zero = dir.file("zero.csv");
  write_file(zero, "loss\n2.5\n0\n1.5\n");
  spec.path = zero;
  try {
    ingest_csv(spec);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveValue);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  const std::string short_row = dir.file("short.csv");
  write_file(short_row, "a,b\n1.0,2.0\n3.0\n");
  DatasetSpec two;
  two.path = short_row;
  two.column = std::int64_t{1};
  CHECK_THROWS_AS(ingest_csv(two), Error);
}

TEST_CASE("ingest handles CRLF and blank lines") {
  TempDir dir;
  const std::string path = dir.file("crlf.csv");
  write_file(path, "loss\r\n2.5\r\n\r\n1.5\r\n");
  DatasetSpec spec;
  spec.path = path;
  IngestResult result = ingest_csv(spec);
  CHECK(result.rows_total == 2);
  CHECK(result.sample.values()[0] == 2.5);
}

TEST_CASE("doubles serialize shortest and round-trip exactly") {
  for (double v : {0.1, 1.0, 1.5, 10.0, 1.0 / 3.0, 2.6213349345596119, -0.0, 1e-300}) {
    const std::string s = format_double(v);
    double back = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(ec == std::errc());
    CHECK(ptr == s.data() + s.size());
    CHECK((back == v || (back != back && v != v)));
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(10.0) == "10");
}

TEST_CASE("series files carry undefined points as empty values") {
  EstimateSeries series;
  series.estimator_tag = "cadena";
  series.points.push_back({1, 2.0});
  series.points.push_back({2, std::nullopt});
  series.points.push_back({3, 0.0});

  const std::string content = series_csv_string(series);
  CHECK(content ==
        "k,estimator_tag,value,defined\n"
        "1,cadena,2,1\n"
        "2,cadena,,0\n"
        "3,cadena,0,1\n");

  TempDir dir;
  const std::string path = dir.file("series.csv");
  write_series_csv(series, path);
  CHECK(read_file(path) == content);
}

TEST_CASE("manifests record command, parameters, seed and outputs") {
  TempDir dir;
  RunManifest manifest = make_manifest("estimate", {{"input", "x.csv"}, {"C", "1"}}, 42);
  manifest.outputs = {"estimate_cadena.csv"};
  const std::string path = dir.file("manifest.json");
  write_manifest(manifest, path);
  const std::string content = read_file(path);
  CHECK(content.find("\"command\": \"estimate\"") != std::string::npos);
  CHECK(content.find("\"base_seed\": 42") != std::string::npos);
  CHECK(content.find("estimate_cadena.csv") != std::string::npos);
  CHECK(content.find("\"timestamp\"") != std::string::npos);
  CHECK(content.find("\"tool_version\"") != std::string::npos);
}

TEST_CASE("estimate command writes aligned series plus manifest") {
  TempDir data_dir;
  const std::string input = data_dir.file("pareto.csv");
  {
    RngStream stream(31415, 0);
    RawSample sample = sample_pareto(400, ParetoModel{1.5, 1.0}, stream);
    std::string content = "loss\n";
    for (double v : sample.values()) content += format_double(v) + "\n";
    write_file(input, content);
  }

  TempDir out;
  EstimateOptions opts;
  opts.dataset.path = input;
  opts.out_dir = out.file("run");
  EstimateResult result = run_estimate(opts);
  CHECK(result.rows_total == 400);
  CHECK(result.n_used == 400);
  REQUIRE(result.files.size() == 3);

  // All series share the identical k column.
  std::string first_k_column;
  for (const auto& name : result.files) {
    const std::string content = read_file(out.file("run/" + name));
    std::string k_column;
    for (std::size_t pos = 0; pos < content.size();) {
      const auto eol = content.find('\n', pos);
      const auto line = content.substr(pos, eol - pos);
      k_column += line.substr(0, line.find(','));
      k_column += '\n';
      pos = eol + 1;
    }
    if (first_k_column.empty()) {
      first_k_column = k_column;
    } else {
      CHECK(k_column == first_k_column);
    }
  }
  CHECK(fs::exists(out.file("run/manifest.json")));

  // Rerunning reproduces the payload byte for byte.
  TempDir out2;
  EstimateOptions again = opts;
  again.out_dir = out2.file("run");
  run_estimate(again);
  for (const auto& name : result.files) {
    CHECK(read_file(out.file("run/" + name)) == read_file(out2.file("run/" + name)));
  }
}

TEST_CASE("estimate on the exact Pareto grid is constant in k") {
  TempDir dir;
  const std::string input = dir.file("grid.csv");
  std::string content;
  for (int j = 1; j <= 200; ++j) {
    content += format_double(std::pow(200.0 / j, 0.5)) + "\n";
  }
  write_file(input, content);

  EstimateOptions opts;
  opts.dataset.path = input;
  opts.estimator_tags = {"cadena"};
  opts.ks = {5, 25, 125};
  opts.out_dir = dir.file("out");
  run_estimate(opts);

  const std::string series = read_file(dir.file("out/estimate_cadena.csv"));
  std::size_t rows = 0;
  for (std::size_t pos = series.find('\n') + 1; pos < series.size();) {
    const auto eol = series.find('\n', pos);
    const std::string line = series.substr(pos, eol - pos);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto c3 = line.find(',', c2 + 1);
    const double value = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
    CHECK(value == doctest::Approx(2.0).epsilon(1e-12));
    ++rows;
    pos = eol + 1;
  }
  CHECK(rows == 3);
}

TEST_CASE("simulate command writes one file per cell and estimator") {
  TempDir dir;
  SimulateOptions opts;
  opts.grid.alphas = {1.0};
  opts.grid.Cs = {0.1, 1.0};
  opts.grid.ns = {300};
  opts.grid.base_seed = 5;
  opts.out_dir = dir.file("sim");

  SimulateResult result = run_simulate(opts);
  CHECK(result.cells == 2);
  CHECK(result.files.size() == 10);
  CHECK(fs::exists(dir.file("sim/cell_a1_C0.1_n300_cadena-scaled.csv")));
  CHECK(fs::exists(dir.file("sim/cell_a1_C1_n300_moment-recip.csv")));
  CHECK(fs::exists(dir.file("sim/manifest.json")));

  // Byte-identical rerun (manifest timestamp aside).
  TempDir dir2;
  SimulateOptions again = opts;
  again.out_dir = dir2.file("sim");
  run_simulate(again);
  for (const auto& name : result.files) {
    CHECK(read_file(dir.file("sim/" + name)) == read_file(dir2.file("sim/" + name)));
  }
}

TEST_CASE("suite commands emit reports with verdicts and derivations") {
  TempDir dir;
  Lemma2Options opts;
  opts.n = 2000;
  opts.k = 100;
  opts.replications = 400;
  opts.seed = 42;
  opts.out_dir = dir.file("lemma2");

  SuiteRunResult result = run_lemma2(opts);
  CHECK(result.verdict.passed());
  const std::string report = read_file(result.report_path);
  CHECK(report.find("\"suite\": \"lemma2\"") != std::string::npos);
  CHECK(report.find("\"derivation\"") != std::string::npos);
  CHECK(report.find("\"status\": \"pass\"") != std::string::npos);

  Lemma2Options tiny = opts;
  tiny.replications = 3;
  tiny.out_dir = dir.file("tiny");
  SuiteRunResult inconclusive = run_lemma2(tiny);
  CHECK(inconclusive.verdict.status == SuiteVerdict::Status::Inconclusive);
  CHECK(read_file(inconclusive.report_path).find("inconclusive") != std::string::npos);
}

TEST_CASE("consistency command distinguishes the two models") {
  TempDir dir;
  ConsistencyOptions opts;
  opts.ns = {1000, 10000};
  opts.replications = 20;
  opts.seed = 2024;
  opts.out_dir = dir.file("cons");
  SuiteRunResult result = run_consistency(opts);
  // 20 replications sit below the conclusive minimum by design.
  CHECK(result.verdict.status == SuiteVerdict::Status::Inconclusive);
  CHECK(read_file(result.report_path).find("\"model\": \"pareto\"") != std::string::npos);

  ConsistencyOptions bad = opts;
  bad.model = "weibull";
  CHECK_THROWS_AS(run_consistency(bad), Error);
}

TEST_CASE("mindex command on builtins and tabulated input") {
  TempDir dir;
  MindexOptions opts;
  opts.builtin = "power";
  opts.eta = 1.5;
  opts.out_dir = dir.file("pow");
  MindexRunResult result = run_mindex(opts);
  CHECK(std::abs(result.estimated_index - 1.5) <= 0.01);
  CHECK(!result.drifting);
  CHECK(fs::exists(dir.file("pow/mindex.csv")));
  CHECK(fs::exists(dir.file("pow/mindex_summary.json")));

  // Step-function builtin on the e^m grid sits exactly at -1.
  MindexOptions fl;
  fl.builtin = "floor-log";
  fl.grid_from = std::exp(1.0);
  fl.grid_to = std::exp(40.0);
  fl.grid_points = 40;
  fl.out_dir = dir.file("floor");
  MindexRunResult floor_result = run_mindex(fl);
  CHECK(floor_result.estimated_index == -1.0);

  MindexOptions exp_opts;
  exp_opts.builtin = "exp";
  exp_opts.out_dir = dir.file("exp");
  CHECK(run_mindex(exp_opts).drifting);

  // Tabulated input: x <= 1 rows are named.
  const std::string table = dir.file("table.csv");
  std::string content = "x,u\n";
  for (int i = 2; i <= 12; ++i) {
    content += format_double(std::pow(10.0, i)) + "," +
               format_double(std::pow(10.0, 2 * i)) + "\n";
  }
  write_file(table, content);
  MindexOptions tab;
  tab.input_path = table;
  tab.out_dir = dir.file("tab");
  MindexRunResult tab_result = run_mindex(tab);
  CHECK(std::abs(tab_result.estimated_index - 2.0) <= 1e-9);

  write_file(table, "x,u\n0.5,2.0\n" + content.substr(4));
  try {
    run_mindex(tab);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
