#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "atd/cli.hpp"
#include "atd/config_io.hpp"

using namespace atd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run atd_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "atd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string line_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) return line;
  return {};
}

std::vector<std::string> fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           (std::string("atd_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string observations_for(const std::vector<std::pair<Category, double>>& rows) {
  const auto params = default_parameters();
  std::vector<CalibrationObservation<double>> obs;
  int i = 0;
  for (auto [c, d] : rows) {
    const Point p{10000, d, 10000, 15, 4, 0.4, 0.3};
    obs.push_back({"m" + std::to_string(i++), c, category_cost(params.categories[c], p, params.reference), p});
  }
  return observations_csv(obs);
}

}  // namespace

TEST(Scenarios, TableShowsHighAdoptionHighDebtRow) {
  const auto r = atd_cli({"scenarios"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fields(line_starting(r.out, "S4")), (std::vector<std::string>{"S4", "10,799", "1.08", "0.69", "0.39"}));
  EXPECT_NE(r.out.find("USD 0.33"), std::string::npos);
}

TEST(Scenarios, CsvMatchesLibraryExport) {
  const auto r = atd_cli({"scenarios", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto bundle = run_all(default_parameters());
  EXPECT_EQ(r.out, scenarios_csv(bundle.scenarios));
}

TEST(Scenarios, BundleWritesEveryTable) {
  TempDir dir;
  const auto r = atd_cli({"scenarios", "--bundle", "--out", dir.path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"scenarios.csv", "sweep.csv", "timeseries.csv", "insights.csv", "data_dictionary.txt"})
    EXPECT_TRUE(fs::exists(dir.path / f)) << f;
  EXPECT_EQ(atd_cli({"scenarios", "--bundle"}).code, kExitValidation);
}

TEST(Sweep, HighDebtRow) {
  const auto r = atd_cli({"sweep"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(fields(line_starting(r.out, "0.75")), (std::vector<std::string>{"0.75", "11,783", "1.18", "+72%"}));
  EXPECT_EQ(fields(line_starting(r.out, "0.00")).back(), "--");
}

TEST(Sweep, CustomRange) {
  TempDir dir;
  const auto r = atd_cli({"sweep", "--steps", "3", "--from", "0", "--to", "0.5", "--out", dir.path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fields(line_starting(r.out, "0.50"))[1], "10,143");
  EXPECT_TRUE(fs::exists(dir.path / "sweep.csv"));
  EXPECT_EQ(atd_cli({"sweep", "--steps", "1"}).code, kExitValidation);
}

TEST(Timeseries, AccumulationPathMonthNine) {
  const auto r = atd_cli({"timeseries"});
  ASSERT_EQ(r.code, 0);
  const auto row = fields(line_starting(r.out, "9 "));
  ASSERT_EQ(row.size(), 5u);
  EXPECT_EQ(row[1], "0.46");
  EXPECT_EQ(row[2], "0.99");
  EXPECT_EQ(row[3], "0.00");
  EXPECT_EQ(row[4], "0.69");
}

TEST(Timeseries, MonthsOption) {
  const auto r = atd_cli({"timeseries", "--months", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(line_starting(r.out, "3 ").empty());
  EXPECT_TRUE(line_starting(r.out, "4 ").empty());
}

TEST(Decompose, HighDebtPilot) {
  const auto r = atd_cli({"decompose", "--scenario", "S3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fields(line_starting(r.out, "  Baseline per tx:")).back(), "1.65");
  EXPECT_EQ(fields(line_starting(r.out, "  Debt-amplified per tx:")).back(), "0.99");
  EXPECT_EQ(fields(line_starting(r.out, "security_guardrails"))[1], "186.44");
}

TEST(Decompose, ZeroDebtPointHasNoDebtComponent) {
  const auto r = atd_cli({"decompose", "--n", "1000", "--d", "0", "--s", "5", "--h", "4", "--a", "0.4", "--theta", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fields(line_starting(r.out, "  Debt-amplified per tx:")).back(), "0.00");
  EXPECT_EQ(fields(line_starting(r.out, "  ST per tx:")).back(), "1.65");
}

TEST(Decompose, JsonFormat) {
  const auto r = atd_cli({"decompose", "--scenario", "S2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"st_per_tx\""), std::string::npos);
}

TEST(Decompose, Errors) {
  const auto unknown = atd_cli({"decompose", "--scenario", "S9"});
  EXPECT_EQ(unknown.code, kExitValidation);
  EXPECT_EQ(unknown.err.rfind("error kind=validation field=--scenario message=", 0), 0u) << unknown.err;

  const auto domain = atd_cli({"decompose", "--n", "1000", "--d", "0", "--s", "0", "--h", "4", "--a", "0.4", "--theta", "0.3"});
  EXPECT_EQ(domain.code, kExitValidation);
  EXPECT_NE(domain.err.find("kind=domain"), std::string::npos) << domain.err;
}

TEST(Calibrate, RecoversBetaAndDiagnosesSingletons) {
  TempDir dir;
  const fs::path file = dir.path / "obs.csv";
  write_text_file(file, observations_for({{Category::retry_repair, 0.1},
                                          {Category::retry_repair, 0.4},
                                          {Category::retry_repair, 0.9},
                                          {Category::escalation, 0.3},
                                          {Category::monitoring, 0.3},
                                          {Category::monitoring, 0.3}}));
  const auto r = atd_cli({"calibrate", "--observations", file.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto retry = fields(line_starting(r.out, "retry_repair"));
  EXPECT_EQ(retry[1], "3");
  EXPECT_EQ(retry[2], "2.5");
  EXPECT_NE(line_starting(r.out, "escalation").find("ill_posed"), std::string::npos);
  EXPECT_NE(line_starting(r.out, "monitoring").find("ill_posed"), std::string::npos);
}

TEST(Calibrate, MissingObservationsOption) {
  EXPECT_EQ(atd_cli({"calibrate"}).code, kExitValidation);
}

TEST(Dictionary, PrintsAndWrites) {
  TempDir dir;
  const auto r = atd_cli({"dictionary", "--out", dir.path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, emit_data_dictionary());
  EXPECT_EQ(read_text_file(dir.path / "data_dictionary.txt"), r.out);
}

TEST(Params, CustomFileIsUsed) {
  TempDir dir;
  std::string text = serialize_parameters(default_parameters());
  text.replace(text.find("beta = 2.5"), 10, "beta = 5");
  write_text_file(dir.path / "p.ini", text);
  const auto r = atd_cli({"decompose", "--scenario", "S1", "--params", (dir.path / "p.ini").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fields(line_starting(r.out, "retry_repair"))[1], "60.00");
}

TEST(ExitCodes, ValidationIoAndUsage) {
  TempDir dir;
  write_text_file(dir.path / "bad.ini", "[reference]\nu0 = -1\n");
  const auto bad = atd_cli({"scenarios", "--params", (dir.path / "bad.ini").string()});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_EQ(bad.err.rfind("error kind=", 0), 0u);

  const auto missing = atd_cli({"scenarios", "--params", (dir.path / "none.ini").string()});
  EXPECT_EQ(missing.code, kExitIo);
  EXPECT_NE(missing.err.find("kind=io"), std::string::npos);

  EXPECT_EQ(atd_cli({"scenarios", "--bogus"}).code, kExitValidation);
  EXPECT_EQ(atd_cli({}).code, kExitValidation);
  EXPECT_EQ(atd_cli({"--help"}).code, kExitOk);
}
