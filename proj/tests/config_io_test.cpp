#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "atd/config_io.hpp"
#include "atd/report_format.hpp"

using namespace atd;
namespace fs = std::filesystem;

namespace {

const fs::path kShippedFile = fs::path(ATD_DATA_DIR) / "default_parameters.ini";

std::string shipped_text() { return read_text_file(kShippedFile); }

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

Error parse_error(const std::string& text) {
  try {
    parse_parameters(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "parse succeeded";
  return Error(ErrorKind::io, "", "");
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("atd_cfg_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(ShippedFile, LoadsToDefaults) {
  EXPECT_EQ(load_parameters(kShippedFile), default_parameters());
}

TEST(ShippedFile, CanonicalExportIsByteIdentical) {
  EXPECT_EQ(serialize_parameters(default_parameters()), shipped_text());
}

TEST(ShippedFile, DefaultsProduceNoWarnings) {
  EXPECT_TRUE(validate(default_parameters()).empty());
}

TEST(ParseParameters, OmittedGammaIsZero) {
  const auto p = parse_parameters(replace_once(shipped_text(), "gamma_u = 0.12\n", ""));
  EXPECT_EQ(p.categories[Category::evaluation].gamma_u, 0.0);
  EXPECT_EQ(p.categories[Category::evaluation].gamma_s, 0.08);
}

TEST(ParseParameters, DebtOutOfRangeNamesTheField) {
  const auto e = parse_error(replace_once(shipped_text(), "d = 0.6\nn = 1000", "d = 1.2\nn = 1000"));
  EXPECT_EQ(e.kind(), ErrorKind::validation);
  EXPECT_EQ(e.field(), "scenario.S3.d");
  EXPECT_NE(std::string(e.what()).find("line 138: "), std::string::npos) << e.what();
}

TEST(ParseParameters, MissingCategory) {
  std::string text = shipped_text();
  const auto start = text.find("[category.latency_delay]");
  const auto end = text.find("[category.token_compute_context]");
  text.erase(start, end - start);
  const auto e = parse_error(text);
  EXPECT_EQ(e.kind(), ErrorKind::missing_category);
  EXPECT_NE(std::string(e.what()).find("latency_delay"), std::string::npos);
}

TEST(ParseParameters, UnknownCategoryKeyAndSection) {
  EXPECT_EQ(parse_error(replace_once(shipped_text(), "[category.evaluation]", "[category.audit]")).kind(),
            ErrorKind::validation);
  const auto key = parse_error(replace_once(shipped_text(), "beta = 1.2\n", "beta = 1.2\nbeta2 = 3\n"));
  EXPECT_EQ(key.field(), "category.evaluation.beta2");
  EXPECT_EQ(parse_error(shipped_text() + "\n[extras]\nx = 1\n").kind(), ErrorKind::validation);
}

TEST(ParseParameters, MissingRequiredKey) {
  const auto e = parse_error(replace_once(shipped_text(), "f = 200\n", ""));
  EXPECT_EQ(e.field(), "category.evaluation.f");
}

TEST(ParseParameters, BadNumberReportsLine) {
  const auto e = parse_error(replace_once(shipped_text(), "u0 = 1000", "u0 = 1000x"));
  EXPECT_EQ(e.kind(), ErrorKind::parse);
  EXPECT_EQ(e.field(), "reference.u0");
  EXPECT_NE(std::string(e.what()).find("line 9"), std::string::npos) << e.what();
}

TEST(ParseParameters, MalformedLineIsParseError) {
  const auto e = parse_error(replace_once(shipped_text(), "[reference]", "[reference"));
  EXPECT_EQ(e.kind(), ErrorKind::parse);
}

TEST(ParseParameters, DuplicateKeyRejected) {
  EXPECT_THROW(parse_parameters(replace_once(shipped_text(), "s0 = 5\n", "s0 = 5\ns0 = 6\n")), Error);
}

TEST(ParseParameters, NegativeFixedCostRejected) {
  const auto e = parse_error(replace_once(shipped_text(), "f = 200", "f = -200"));
  EXPECT_EQ(e.field(), "category.evaluation.f");
}

TEST(ParseParameters, NegativeGammaIsOnlyAWarning) {
  const auto p = parse_parameters(replace_once(shipped_text(), "gamma_h = 0.04", "gamma_h = -0.04"));
  const auto w = validate(p);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0], "category.monitoring.gamma_h");
}

TEST(ParseParameters, TiedAdoptionRules) {
  // u equal to n is tolerated, anything else is refused while tied.
  const auto ok = parse_parameters(replace_once(shipped_text(), "n = 1000\ns = 5", "n = 1000\nu = 1000\ns = 5"));
  EXPECT_EQ(ok, default_parameters());
  EXPECT_EQ(parse_error(replace_once(shipped_text(), "n = 1000\ns = 5", "n = 1000\nu = 900\ns = 5")).field(),
            "scenario.S1.u");

  // Untied files must give u everywhere.
  std::string untied = replace_once(shipped_text(), "tie_u_to_n = true", "tie_u_to_n = false");
  EXPECT_EQ(parse_error(untied).kind(), ErrorKind::validation);
}

TEST(ParseParameters, ZeroScaleDriverIsDomainError) {
  const auto e = parse_error(replace_once(shipped_text(), "n = 1000\ns = 5", "n = 1000\ns = 0"));
  EXPECT_EQ(e.kind(), ErrorKind::domain);
  EXPECT_EQ(e.field(), "scenario.S1.s");
}

TEST(ParseParameters, CommentsAndBlankLines) {
  const auto p = parse_parameters("# leading comment\n\n" + shipped_text() + "\n; trailing\n");
  EXPECT_EQ(p, default_parameters());
}

TEST(RoundTrip, ModifiedFileIsAFixedPoint) {
  std::string text = replace_once(shipped_text(), "beta = 2.5", "beta = 2.75");
  text = replace_once(text, "cost_retest = 0", "cost_retest = 1250\ncoupling.ctx_tool = 0.05\ncost_coord.mem_obs = 300");
  text = replace_once(text, "status = expert_prior", "status = before_after");
  const auto p1 = parse_parameters(text);
  EXPECT_EQ(p1.status_of(Category::evaluation), CalibrationStatus::before_after);
  const auto s1 = serialize_parameters(p1);
  const auto p2 = parse_parameters(s1);
  EXPECT_EQ(p1, p2);
  EXPECT_EQ(serialize_parameters(p2), s1);

  TempDir dir;
  write_text_file(dir.path / "p.ini", s1);
  EXPECT_EQ(load_parameters(dir.path / "p.ini"), p1);
}

TEST(RoundTrip, MissingFileIsIoError) {
  try {
    load_parameters("/nonexistent/params.ini");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(Overrides, AppliedOnACopy) {
  const auto base = default_parameters();
  const auto changed = with_overrides(base, {{"category.retry_repair", {{"beta", "3"}}},
                                             {"scenario.S1", {{"d", "0.3"}}}});
  EXPECT_EQ(changed.categories[Category::retry_repair].beta, 3.0);
  EXPECT_EQ(changed.find_scenario("S1")->point.d, 0.3);
  EXPECT_EQ(base, default_parameters());
}

TEST(Overrides, InvalidValueRejected) {
  const auto base = default_parameters();
  EXPECT_THROW(with_overrides(base, {{"category.retry_repair", {{"beta", "-1"}}}}), Error);
  EXPECT_THROW(with_overrides(base, {{"reference", {{"u0", "abc"}}}}), Error);
  EXPECT_THROW(with_overrides(base, {{"reference", {{"bogus", "1"}}}}), Error);
  EXPECT_EQ(base, default_parameters());
}

TEST(Overrides, CanAddScenario) {
  const auto p = with_overrides(default_parameters(),
                                {{"scenario.S5", {{"n", "5000"}, {"d", "0.2"}, {"s", "10"}, {"h", "4"},
                                                  {"a", "0.5"}, {"theta", "0.3"}}}});
  ASSERT_NE(p.find_scenario("S5"), nullptr);
  EXPECT_EQ(p.find_scenario("S5")->point.u, 5000.0);
}

TEST(Csv, ScenarioDisplayValues) {
  const auto bundle = run_all(default_parameters());
  const auto csv = scenarios_csv(bundle.scenarios);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "scenario,N,D,U,S,H,A,theta,evaluation,monitoring,retry_repair,escalation,revalidation,"
            "latency_delay,token_compute_context,security_guardrails,tst,st_per_tx,st0_per_tx,"
            "std_per_tx,tst_display,st_per_tx_display,st0_per_tx_display,std_per_tx_display");
  EXPECT_NE(csv.find("\nS1,"), std::string::npos);
  EXPECT_NE(csv.find(",1810,1.81,1.65,0.16\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",10799,1.08,0.69,0.39\n"), std::string::npos) << csv;
}

TEST(Csv, SweepAndTimeseries) {
  const auto bundle = run_all(default_parameters());
  const auto sweep = sweep_csv(bundle.sweep);
  EXPECT_NE(sweep.find("\n0.25,"), std::string::npos);
  EXPECT_NE(sweep.find(",8504,0.85,24\n"), std::string::npos) << sweep;
  const auto ts = timeseries_csv(bundle.paths);
  EXPECT_EQ(ts.substr(0, ts.find(',')), "month");
  EXPECT_NE(ts.find("A_d,A_st_per_tx,B_d,B_st_per_tx"), std::string::npos) << ts;
  EXPECT_EQ(std::count(ts.begin(), ts.end(), '\n'), 14);
}

TEST(Csv, EmptySuiteGivesHeaderOnly) {
  const auto csv = scenarios_csv({});
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  const auto ins = insights_csv({});
  EXPECT_EQ(ins, "key,label,value,unit,value_display\n");
}

TEST(Csv, ExportsAreByteIdenticalAcrossRuns) {
  TempDir a, b;
  export_csv(run_all(default_parameters()), a.path);
  export_csv(run_all(load_parameters(kShippedFile)), b.path);
  for (const char* name :
       {"scenarios.csv", "sweep.csv", "timeseries.csv", "insights.csv", "data_dictionary.txt"}) {
    ASSERT_TRUE(fs::exists(a.path / name)) << name;
    EXPECT_EQ(read_text_file(a.path / name), read_text_file(b.path / name)) << name;
  }
}

TEST(Observations, ParseAndRoundTrip) {
  const std::string text =
      "period,category,cost,n,u,s,h,a,theta,d\n"
      "2026-01,retry_repair,1000.5,10000,10000,15,4,0.4,0.3,0.1\n"
      "2026-02,retry_repair,1300,10000,10000,15,4,0.4,0.3,0.2\n";
  const auto obs = parse_observations(text);
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0].period, "2026-01");
  EXPECT_EQ(obs[0].category, Category::retry_repair);
  EXPECT_EQ(obs[0].cost, 1000.5);
  EXPECT_EQ(obs[1].point.d, 0.2);
  EXPECT_EQ(parse_observations(observations_csv(obs)).size(), 2u);
  EXPECT_EQ(observations_csv(parse_observations(observations_csv(obs))), observations_csv(obs));
}

TEST(Observations, BadRowsRejected) {
  const std::string header = "period,category,cost,n,u,s,h,a,theta,d\n";
  EXPECT_THROW(parse_observations("period,cost\n"), Error);
  EXPECT_THROW(parse_observations(header + "p,unknown,1,1,1,1,1,0,0,0\n"), Error);
  EXPECT_THROW(parse_observations(header + "p,evaluation,x,1,1,1,1,0,0,0\n"), Error);
  EXPECT_THROW(parse_observations(header + "p,evaluation,1,1,1,1\n"), Error);
}

TEST(DataDictionary, ListsFieldsAndIds) {
  const auto dict = emit_data_dictionary();
  EXPECT_NE(dict.find("field | symbol | scale | units | default | meaning"), std::string::npos);
  EXPECT_NE(dict.find("0 stable, 0.5 moderate drift, 1 high variability"), std::string::npos);
  for (Category c : kAllCategories)
    EXPECT_NE(dict.find(std::string(to_string(c))), std::string::npos) << to_string(c);
  const auto u0 = dict.find("reference.u0");
  ASSERT_NE(u0, std::string::npos);
  const auto line = dict.substr(u0, dict.find('\n', u0) - u0);
  EXPECT_NE(line.find("| 1000 |"), std::string::npos) << line;
}
