#include "atd/cli.hpp"

#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "atd/config_io.hpp"
#include "atd/report_format.hpp"
#include "atd/service.hpp"

namespace atd {

namespace {

struct Options {
  std::string params_path;
  std::string out_dir;
  std::string format = "table";
  bool bundle = false;
  // sweep
  std::optional<int> steps;
  std::optional<double> d_from, d_to;
  // timeseries
  std::optional<int> months;
  // decompose
  std::string scenario;
  std::optional<double> n, d, u, s, h, a, theta;
  // calibrate
  std::string observations;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n' ? ' ' : c);
  }
  return out;
}

void report_error(std::ostream& err, std::string_view kind, const std::string& field,
                  const std::string& message) {
  err << "error kind=" << kind << " field=" << (field.empty() ? "-" : field) << " message=\""
      << escape(message) << "\"\n";
}

ParameterFile load(const Options& o) {
  return o.params_path.empty() ? default_parameters() : load_parameters(o.params_path);
}

/// Left-aligned first column, right-aligned rest.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i == 0)
        line += fmt::format("{:<{}}", r[i], width[i]);
      else
        line += fmt::format("  {:>{}}", r[i], width[i]);
    }
    out << line << "\n";
  }
}

std::string money(const std::optional<double>& v, int decimals) {
  if (!v) return "n/a";
  const double rounded = decimals == 0 ? round_total(*v) : round_per_tx(*v);
  return format_grouped(rounded == 0.0 ? 0.0 : rounded, decimals);
}

void write_or_print(const Options& o, std::ostream& out, const std::string& file,
                    const std::string& csv) {
  if (!o.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    if (ec) throw Error(ErrorKind::io, o.out_dir, "cannot create " + o.out_dir + ": " + ec.message());
    write_text_file(std::filesystem::path(o.out_dir) / file, csv);
  }
  if (o.format == "csv") out << csv;
}

int cmd_scenarios(const Options& o, std::ostream& out) {
  const ParameterFile p = load(o);
  const ResultBundle bundle = run_all(p);
  if (o.bundle) {
    if (o.out_dir.empty())
      throw Error(ErrorKind::validation, "--out", "--bundle requires --out");
    export_csv(bundle, o.out_dir);
  } else if (!o.out_dir.empty()) {
    write_or_print(o, out, "insights.csv", insights_csv(bundle.insights));
  }
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array(), insights = nlohmann::json::array();
    for (const auto& r : bundle.scenarios) rows.push_back(to_json(r, p));
    for (const auto& i : bundle.insights) insights.push_back(to_json(i));
    out << nlohmann::json{{"scenarios", rows}, {"insights", insights}}.dump(2) << "\n";
    if (!o.bundle && !o.out_dir.empty())
      write_text_file(std::filesystem::path(o.out_dir) / "scenarios.csv",
                      scenarios_csv(bundle.scenarios));
    return kExitOk;
  }
  if (!o.bundle) write_or_print(o, out, "scenarios.csv", scenarios_csv(bundle.scenarios));
  if (o.format == "table") {
    std::vector<std::vector<std::string>> rows{
        {"Scenario", "Total TST", "ST per tx", "Baseline per tx", "Debt-amplified per tx"}};
    for (const auto& r : bundle.scenarios)
      rows.push_back({r.spec.name, money(r.report.total, 0), money(r.report.per_tx, 2),
                      money(r.report.baseline_per_tx, 2), money(r.report.debt_per_tx, 2)});
    print_table(out, rows);
    if (!bundle.insights.empty()) {
      out << "\n";
      for (const auto& i : bundle.insights)
        out << i.label << ": " << p.meta.currency << " "
            << money(i.value, i.unit == "per_tx" ? 2 : 0) << " " << i.unit << "\n";
    }
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const ParameterFile p = load(o);
  SweepSpec spec = p.sweep;
  if (o.steps) spec.steps = *o.steps;
  if (o.d_from) spec.d_from = *o.d_from;
  if (o.d_to) spec.d_to = *o.d_to;
  const auto rows = run_sweep(spec, p.categories, p.reference);
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    out << nlohmann::json{{"rows", j}}.dump(2) << "\n";
    if (!o.out_dir.empty())
      write_text_file(std::filesystem::path(o.out_dir) / "sweep.csv", sweep_csv(rows));
    return kExitOk;
  }
  write_or_print(o, out, "sweep.csv", sweep_csv(rows));
  if (o.format == "table") {
    std::vector<std::vector<std::string>> table{{"D", "Total TST", "ST per tx", "Change vs D=0"}};
    for (const auto& r : rows) {
      std::string pct = "--";
      if (r.pct_change && r.d != 0.0) pct = fmt::format("{:+.0f}%", round_percent(*r.pct_change));
      table.push_back({fmt::format("{:.2f}", r.d), money(r.total, 0), money(r.per_tx, 2), pct});
    }
    print_table(out, table);
  }
  return kExitOk;
}

int cmd_timeseries(const Options& o, std::ostream& out) {
  const ParameterFile p = load(o);
  std::vector<PathSpec> specs = p.paths;
  if (o.months)
    for (auto& s : specs) s.months = *o.months;
  const auto paths = run_paths(specs, p.categories, p.reference);
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : paths) j.push_back(to_json(s));
    out << nlohmann::json{{"paths", j}}.dump(2) << "\n";
    if (!o.out_dir.empty())
      write_text_file(std::filesystem::path(o.out_dir) / "timeseries.csv", timeseries_csv(paths));
    return kExitOk;
  }
  write_or_print(o, out, "timeseries.csv", timeseries_csv(paths));
  if (o.format == "table") {
    std::vector<std::string> header{"Month"};
    std::size_t months = 0;
    for (const auto& s : paths) {
      header.push_back("Path " + s.name + ": D");
      header.push_back("Path " + s.name + ": ST");
      months = std::max(months, s.points.size());
    }
    std::vector<std::vector<std::string>> table{header};
    for (std::size_t m = 0; m < months; ++m) {
      std::vector<std::string> row{std::to_string(m)};
      for (const auto& s : paths) {
        if (m < s.points.size()) {
          row.push_back(fmt::format("{:.2f}", round_per_tx(s.points[m].d) + 0.0));
          row.push_back(money(s.points[m].per_tx, 2));
        } else {
          row.insert(row.end(), {"", ""});
        }
      }
      table.push_back(row);
    }
    print_table(out, table);
  }
  return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const ParameterFile p = load(o);
  Point point;
  std::string label;
  if (!o.scenario.empty()) {
    const ScenarioSpec* spec = p.find_scenario(o.scenario);
    if (!spec) throw Error(ErrorKind::validation, "--scenario", "unknown scenario " + o.scenario);
    point = spec->point;
    label = spec->name;
  } else {
    auto need = [](const std::optional<double>& v, const char* flag) {
      if (!v)
        throw Error(ErrorKind::validation, flag,
                    std::string("missing ") + flag + " (or pass --scenario)");
      return *v;
    };
    point.n = need(o.n, "--n");
    point.d = need(o.d, "--d");
    point.u = o.u ? *o.u : (p.meta.tie_u_to_n ? point.n : need(o.u, "--u"));
    point.s = need(o.s, "--s");
    point.h = need(o.h, "--h");
    point.a = need(o.a, "--a");
    point.theta = need(o.theta, "--theta");
    label = "custom point";
  }
  const Report r = evaluate(p.categories, point, p.reference);
  if (o.format == "json") {
    out << to_json(r, point, p).dump(2) << "\n";
    return kExitOk;
  }
  out << "Decomposition for " << label << fmt::format(" (N={}, D={}, U={}, S={}, H={}, A={}, theta={})",
                                                      format_number(point.n), format_number(point.d),
                                                      format_number(point.u), format_number(point.s),
                                                      format_number(point.h), format_number(point.a),
                                                      format_number(point.theta))
      << "\n";
  out << "  Total TST:             " << money(r.total, 0) << "\n";
  out << "  ST per tx:             " << money(r.per_tx, 2) << "\n";
  out << "  Baseline per tx:       " << money(r.baseline_per_tx, 2) << "\n";
  out << "  Debt-amplified per tx: " << money(r.debt_per_tx, 2) << "\n\n";
  std::vector<std::vector<std::string>> table{
      {"Category", "Cost", "Phi", "Psi", "beta", "Calibration"}};
  for (Category c : kAllCategories) {
    const Eigen::Index k = index_of(c);
    table.push_back({std::string(to_string(c)), fmt::format("{:.2f}", r.cost(k)),
                     fmt::format("{:.4f}", r.debt_factor(k)),
                     fmt::format("{:.4f}", r.exposure_factor(k)), format_number(p.categories.beta(k)),
                     std::string(to_string(p.status_of(c)))});
  }
  print_table(out, table);
  return kExitOk;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  const ParameterFile p = load(o);
  const auto obs = load_observations(o.observations);
  const auto results = calibrate_categories(obs, p.categories, p.reference);
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) j.push_back(to_json(r));
    out << nlohmann::json{{"results", j}}.dump(2) << "\n";
    return kExitOk;
  }
  std::vector<std::vector<std::string>> table{
      {"Category", "Observations", "beta_hat", "Residual SS", "Prior beta", "Diagnostic"}};
  for (const auto& r : results) {
    const std::string prior = format_number(p.categories[r.category].beta);
    if (r.fit)
      table.push_back({std::string(to_string(r.category)), std::to_string(r.observations),
                       format_number(r.fit->beta), fmt::format("{:.3g}", r.fit->residual_ss), prior,
                       "ok"});
    else
      table.push_back({std::string(to_string(r.category)), std::to_string(r.observations), "n/a",
                       "n/a", prior, r.diagnostic});
  }
  print_table(out, table);
  return kExitOk;
}

int cmd_dictionary(const Options& o, std::ostream& out) {
  const std::string text = emit_data_dictionary();
  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    write_text_file(std::filesystem::path(o.out_dir) / "data_dictionary.txt", text);
  }
  out << text;
  return kExitOk;
}

HttpServer* g_server = nullptr;

int cmd_serve(const Options& o, std::ostream& out) {
  EvaluationService service(load(o));
  HttpServer server(service, {o.host, o.port, o.static_dir});
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  out << "serving on http://" << o.host << ":" << o.port << "/v1" << std::endl;
  server.run();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agentic technical debt and stochastic tax model"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--params", o.params_path, "Parameter file (defaults to the shipped calibration)");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out_dir, "Directory for CSV output");
    cmd->add_option("--format", o.format, "Console output: table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
  };

  auto* scenarios = app.add_subcommand("scenarios", "Evaluate the scenario suite");
  add_params(scenarios);
  add_output(scenarios);
  scenarios->add_flag("--bundle", o.bundle, "Write every result table into --out");

  auto* sweep = app.add_subcommand("sweep", "Sweep the debt index at a fixed operating point");
  add_params(sweep);
  add_output(sweep);
  sweep->add_option("--steps", o.steps, "Number of grid points")->check(CLI::Range(2, 100000));
  sweep->add_option("--from", o.d_from, "First debt value");
  sweep->add_option("--to", o.d_to, "Last debt value");

  auto* timeseries = app.add_subcommand("timeseries", "Month-by-month debt and tax paths");
  add_params(timeseries);
  add_output(timeseries);
  timeseries->add_option("--months", o.months, "Months to simulate for every path")
      ->check(CLI::Range(1, 100000));

  auto* decompose = app.add_subcommand("decompose", "Baseline vs debt-amplified tax at one point");
  decompose->set_help_flag("--help", "Print this help message and exit");
  add_params(decompose);
  decompose->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  decompose->add_option("--scenario", o.scenario, "Named scenario from the parameter file");
  decompose->add_option("--n", o.n, "Completed transactions");
  decompose->add_option("--d", o.d, "Debt index");
  decompose->add_option("--u", o.u, "Adoption (defaults to N when tied)");
  decompose->add_option("--s", o.s, "Surface area");
  decompose->add_option("--h", o.h, "Horizon");
  decompose->add_option("--a", o.a, "Autonomy");
  decompose->add_option("--theta", o.theta, "Variability");

  auto* calibrate = app.add_subcommand("calibrate", "Estimate debt sensitivities from observations");
  add_params(calibrate);
  calibrate->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  calibrate->add_option("--observations", o.observations, "observations.csv")->required();

  auto* dictionary = app.add_subcommand("dictionary", "Print the data dictionary");
  dictionary->add_option("--out", o.out_dir, "Directory to also write data_dictionary.txt into");

  auto* serve = app.add_subcommand("serve", "Run the HTTP evaluation service");
  add_params(serve);
  serve->add_option("--host", o.host, "Listen address");
  serve->add_option("--port", o.port, "Listen port")->check(CLI::Range(0, 65535));
  serve->add_option("--static-dir", o.static_dir, "Dashboard assets to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", "", e.what());
    return kExitValidation;
  }

  try {
    if (*scenarios) return cmd_scenarios(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*timeseries) return cmd_timeseries(o, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*calibrate) return cmd_calibrate(o, out);
    if (*dictionary) return cmd_dictionary(o, out);
    if (*serve) return cmd_serve(o, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.field(), e.what());
    return e.kind() == ErrorKind::io ? kExitIo : kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    report_error(err, "io", e.path1().string(), e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    report_error(err, "internal", "", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace atd
