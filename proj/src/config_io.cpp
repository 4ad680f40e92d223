#include "atd/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "atd/report_format.hpp"

namespace atd {

namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kHeader =
    "; Stochastic tax model parameters. Grammar: docs/parameter_format.md\n";

// (section, key) -> 1-based line number, for error messages.
using LineIndex = std::map<std::pair<std::string, std::string>, int>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

LineIndex index_lines(std::string_view text) {
  LineIndex index;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t[0] == '[') {
      const auto end = t.find(']');
      section = trim(std::string_view(t).substr(1, end == std::string::npos ? 0 : end - 1));
      index[{section, ""}] = line_no;
    } else if (const auto eq = t.find('='); eq != std::string::npos) {
      index[{section, trim(std::string_view(t).substr(0, eq))}] = line_no;
    }
  }
  return index;
}

/// Reads typed values out of one section and reports any key it did not
/// consume.
class SectionReader {
 public:
  SectionReader(const pt::ptree& node, std::string section, const LineIndex& lines)
      : node_(node), section_(std::move(section)), lines_(lines) {}

  bool has(const std::string& key) const { return node_.find(key) != node_.not_found(); }

  std::string field(const std::string& key) const { return section_ + "." + key; }

  std::string text(const std::string& key, const std::string& fallback) {
    auto it = node_.find(key);
    if (it == node_.not_found()) return fallback;
    used_.insert(key);
    return it->second.data();
  }

  double number(const std::string& key) {
    if (!has(key))
      throw Error(ErrorKind::validation, field(key),
                  where(key) + "missing required field " + field(key));
    return number_or(key, 0.0);
  }

  double number_or(const std::string& key, double fallback) {
    auto it = node_.find(key);
    if (it == node_.not_found()) return fallback;
    used_.insert(key);
    double v = 0.0;
    if (!parse_number(it->second.data(), v))
      throw Error(ErrorKind::parse, field(key),
                  where(key) + field(key) + ": expected a number, got '" + it->second.data() + "'");
    return v;
  }

  int integer(const std::string& key) {
    const double v = number(key);
    if (v != std::floor(v) || std::fabs(v) > 1e9)
      throw Error(ErrorKind::validation, field(key), where(key) + field(key) + " must be an integer");
    return static_cast<int>(v);
  }

  bool boolean_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = text(key, "");
    if (v == "true") return true;
    if (v == "false") return false;
    throw Error(ErrorKind::parse, field(key),
                where(key) + field(key) + ": expected true or false, got '" + v + "'");
  }

  void finish() const {
    for (const auto& [key, child] : node_) {
      if (!used_.count(key))
        throw Error(ErrorKind::validation, field(key), where(key) + "unknown key " + field(key));
    }
  }

  std::string where(const std::string& key) const {
    auto it = lines_.find({section_, key});
    if (it == lines_.end()) it = lines_.find({section_, ""});
    return it == lines_.end() ? std::string() : "line " + std::to_string(it->second) + ": ";
  }

 private:
  const pt::ptree& node_;
  std::string section_;
  const LineIndex& lines_;
  std::set<std::string> used_;
};

Point read_point(SectionReader& r, bool tie_u_to_n, double debt) {
  Point p;
  p.n = r.number("n");
  p.d = debt;
  if (tie_u_to_n) {
    p.u = p.n;
    if (r.has("u") && r.number("u") != p.n)
      throw Error(ErrorKind::validation, r.field("u"),
                  r.where("u") + r.field("u") + " must equal n while meta.tie_u_to_n is true");
  } else {
    p.u = r.number("u");
  }
  p.s = r.number("s");
  p.h = r.number("h");
  p.a = r.number("a");
  p.theta = r.number("theta");
  return p;
}

DebtSection read_debt(SectionReader& r) {
  DebtSection debt;
  Vector6<double> scores;
  for (std::size_t i = 0; i < kComponentCount; ++i) {
    const std::string key(to_string(kAllComponents[i]));
    scores(Eigen::Index(i)) = r.number(key);
    if (!(scores(Eigen::Index(i)) >= 0.0 && scores(Eigen::Index(i)) <= 1.0))
      throw Error(ErrorKind::validation, r.field(key),
                  r.where(key) + r.field(key) + " must lie in [0,1]");
  }
  debt.components = DebtComponents<double>(scores);

  for (std::size_t i = 0; i < kComponentCount; ++i) {
    const std::string name(to_string(kAllComponents[i]));
    debt.weights.component(Eigen::Index(i)) =
        r.number_or("weight." + name, debt.weights.component(Eigen::Index(i)));
    debt.costs.remediation(Eigen::Index(i)) = r.number("cost_rem." + name);
  }
  for (auto [a, b] : component_pairs()) {
    const std::string pair = std::string(to_string(a)) + "_" + std::string(to_string(b));
    debt.weights.set_coupling(a, b, r.number_or("coupling." + pair, 0.0));
    debt.costs.set_coordination(a, b, r.number_or("cost_coord." + pair, 0.0));
  }
  debt.costs.retest = r.number_or("cost_retest", 0.0);
  return debt;
}

ParameterFile from_tree(const pt::ptree& tree, const LineIndex& lines) {
  ParameterFile out;
  std::array<bool, kCategoryCount> seen{};
  bool have_reference = false, have_debt = false, have_sweep = false;

  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      auto it = lines.find({"", name});
      const std::string where =
          it == lines.end() ? std::string() : "line " + std::to_string(it->second) + ": ";
      throw Error(ErrorKind::validation, name, where + "key '" + name + "' is outside any section");
    }
  }

  // meta first: the tie flag shapes how points are read.
  if (auto it = tree.find("meta"); it != tree.not_found()) {
    SectionReader r(it->second, "meta", lines);
    out.meta.currency = r.text("currency", out.meta.currency);
    out.meta.period = r.text("period", out.meta.period);
    out.meta.tie_u_to_n = r.boolean_or("tie_u_to_n", out.meta.tie_u_to_n);
    r.finish();
  }

  for (const auto& [name, node] : tree) {
    SectionReader r(node, name, lines);
    const auto dot = name.find('.');
    const std::string kind = name.substr(0, dot);
    const std::string suffix = dot == std::string::npos ? "" : name.substr(dot + 1);

    if (name == "meta") {
      continue;
    } else if (name == "reference") {
      out.reference = {r.number("u0"), r.number("s0"), r.number("h0"), r.number("a0"),
                       r.number("theta0")};
      have_reference = true;
    } else if (kind == "category" && !suffix.empty()) {
      const auto cat = parse_category(suffix);
      if (!cat)
        throw Error(ErrorKind::validation, name, r.where("") + "unknown category '" + suffix + "'");
      CategoryParams<double> p;
      p.fixed = r.number("f");
      p.variable = r.number("v");
      p.beta = r.number("beta");
      p.gamma_u = r.number_or("gamma_u", 0.0);
      p.gamma_s = r.number_or("gamma_s", 0.0);
      p.gamma_h = r.number_or("gamma_h", 0.0);
      p.gamma_a = r.number_or("gamma_a", 0.0);
      p.gamma_theta = r.number_or("gamma_theta", 0.0);
      out.categories.set(*cat, p);
      const std::string status = r.text("status", "expert_prior");
      const auto parsed = parse_calibration_status(status);
      if (!parsed)
        throw Error(ErrorKind::validation, r.field("status"),
                    r.where("status") + "unknown calibration status '" + status + "'");
      out.status[std::size_t(*cat)] = *parsed;
      seen[std::size_t(*cat)] = true;
    } else if (name == "debt") {
      out.debt = read_debt(r);
      have_debt = true;
    } else if (kind == "scenario" && !suffix.empty()) {
      ScenarioSpec s;
      s.name = suffix;
      s.description = r.text("description", "");
      s.point = read_point(r, out.meta.tie_u_to_n, r.number("d"));
      out.scenarios.push_back(std::move(s));
    } else if (name == "sweep") {
      out.sweep.d_from = r.number("d_from");
      out.sweep.d_to = r.number("d_to");
      out.sweep.steps = r.integer("steps");
      out.sweep.point = read_point(r, out.meta.tie_u_to_n, 0.0);
      have_sweep = true;
    } else if (kind == "path" && !suffix.empty()) {
      PathSpec p;
      p.name = suffix;
      p.description = r.text("description", "");
      p.months = r.integer("months");
      p.dynamics = {r.number("acc"), r.number("rem"), r.number("d0")};
      p.point = read_point(r, out.meta.tie_u_to_n, p.dynamics.initial);
      out.paths.push_back(std::move(p));
    } else {
      throw Error(ErrorKind::validation, name, r.where("") + "unknown section [" + name + "]");
    }
    r.finish();
  }

  if (!have_reference)
    throw Error(ErrorKind::validation, "reference", "missing section [reference]");
  for (Category c : kAllCategories)
    if (!seen[std::size_t(c)])
      throw Error(ErrorKind::missing_category, "category." + std::string(to_string(c)),
                  "missing section [category." + std::string(to_string(c)) + "]");
  if (!have_debt) throw Error(ErrorKind::validation, "debt", "missing section [debt]");
  if (!have_sweep) throw Error(ErrorKind::validation, "sweep", "missing section [sweep]");

  try {
    validate(out);
  } catch (const Error& e) {
    // Range checks run after reading; point back at the source line if we can.
    const std::string f = e.field();
    const auto dot = f.rfind('.');
    if (dot != std::string::npos) {
      auto it = lines.find({f.substr(0, dot), f.substr(dot + 1)});
      if (it != lines.end())
        throw Error(e.kind(), f, "line " + std::to_string(it->second) + ": " + e.what());
    }
    throw;
  }
  return out;
}

pt::ptree read_tree(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::parse, "",
                "line " + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

void put_point(std::string& out, const Point& p, bool tie_u_to_n) {
  out += "n = " + format_number(p.n) + "\n";
  if (!tie_u_to_n) out += "u = " + format_number(p.u) + "\n";
  out += "s = " + format_number(p.s) + "\n";
  out += "h = " + format_number(p.h) + "\n";
  out += "a = " + format_number(p.a) + "\n";
  out += "theta = " + format_number(p.theta) + "\n";
}

std::string line_of(std::string_view key, double v) {
  return std::string(key) + " = " + format_number(v) + "\n";
}

std::string display(double x, int decimals) {
  const double r = decimals == 0 ? std::round(x) : std::round(x * 100.0) / 100.0;
  return fmt::format("{:.{}f}", r == 0.0 ? 0.0 : r, decimals);
}

std::string opt_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string opt_display(const std::optional<double>& v, int decimals) {
  return v ? display(*v, decimals) : std::string();
}

}  // namespace

const ScenarioSpec* ParameterFile::find_scenario(std::string_view name) const {
  auto it = std::find_if(scenarios.begin(), scenarios.end(),
                         [&](const ScenarioSpec& s) { return s.name == name; });
  return it == scenarios.end() ? nullptr : &*it;
}

ParameterFile default_parameters() {
  ParameterFile p;
  p.reference = default_reference();
  p.categories = default_categories();
  p.status.fill(CalibrationStatus::expert_prior);
  p.debt.components = DebtComponents<double>::constant(0.10);
  p.scenarios = default_scenarios();
  p.sweep = default_sweep();
  p.paths = default_paths();
  return p;
}

std::vector<std::string> validate(const ParameterFile& p) {
  p.reference.validate();
  std::vector<std::string> warnings = p.categories.validate();
  detail::require_unit_all(p.debt.components.vector(), "debt");
  p.debt.weights.validate();
  p.debt.costs.validate();

  std::set<std::string> names;
  for (const auto& s : p.scenarios) {
    const std::string prefix = "scenario." + s.name + ".";
    if (!names.insert(s.name).second)
      throw Error(ErrorKind::validation, "scenario." + s.name, "duplicate scenario " + s.name);
    s.point.validate(prefix);
    if (p.meta.tie_u_to_n && s.point.u != s.point.n)
      throw Error(ErrorKind::validation, prefix + "u", prefix + "u must equal n while tied");
  }
  p.sweep.validate();
  names.clear();
  for (const auto& path : p.paths) {
    if (!names.insert(path.name).second)
      throw Error(ErrorKind::validation, "path." + path.name, "duplicate path " + path.name);
    path.validate();
  }
  return warnings;
}

ParameterFile parse_parameters(std::string_view text) {
  return from_tree(read_tree(text), index_lines(text));
}

ParameterFile load_parameters(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_parameters(text);
  } catch (const Error& e) {
    throw Error(e.kind(), e.field(), path.string() + ": " + e.what());
  }
}

std::string serialize_parameters(const ParameterFile& p) {
  std::string out(kHeader);
  out += "\n[meta]\n";
  out += "currency = " + p.meta.currency + "\n";
  out += "period = " + p.meta.period + "\n";
  out += std::string("tie_u_to_n = ") + (p.meta.tie_u_to_n ? "true" : "false") + "\n";

  out += "\n[reference]\n";
  out += line_of("u0", p.reference.u0) + line_of("s0", p.reference.s0) +
         line_of("h0", p.reference.h0) + line_of("a0", p.reference.a0) +
         line_of("theta0", p.reference.theta0);

  for (Category c : kAllCategories) {
    const auto k = p.categories[c];
    out += "\n[category." + std::string(to_string(c)) + "]\n";
    out += line_of("f", k.fixed) + line_of("v", k.variable) + line_of("beta", k.beta) +
           line_of("gamma_u", k.gamma_u) + line_of("gamma_s", k.gamma_s) +
           line_of("gamma_h", k.gamma_h) + line_of("gamma_a", k.gamma_a) +
           line_of("gamma_theta", k.gamma_theta);
    out += "status = " + std::string(to_string(p.status_of(c))) + "\n";
  }

  out += "\n[debt]\n";
  for (Component c : kAllComponents) out += line_of(to_string(c), p.debt.components[c]);
  const DebtIndexWeights<double> default_weights;
  if (p.debt.weights.component != default_weights.component)
    for (std::size_t i = 0; i < kComponentCount; ++i)
      out += line_of("weight." + std::string(to_string(kAllComponents[i])),
                     p.debt.weights.component(Eigen::Index(i)));
  for (auto [a, b] : component_pairs())
    if (double w = p.debt.weights.coupling_of(a, b); w != 0.0)
      out += line_of("coupling." + std::string(to_string(a)) + "_" + std::string(to_string(b)), w);
  for (std::size_t i = 0; i < kComponentCount; ++i)
    out += line_of("cost_rem." + std::string(to_string(kAllComponents[i])),
                   p.debt.costs.remediation(Eigen::Index(i)));
  for (auto [a, b] : component_pairs())
    if (double c = p.debt.costs.coordination_of(a, b); c != 0.0)
      out += line_of("cost_coord." + std::string(to_string(a)) + "_" + std::string(to_string(b)),
                     c);
  out += line_of("cost_retest", p.debt.costs.retest);

  for (const auto& s : p.scenarios) {
    out += "\n[scenario." + s.name + "]\n";
    out += "description = " + s.description + "\n";
    out += line_of("d", s.point.d);
    put_point(out, s.point, p.meta.tie_u_to_n);
  }

  out += "\n[sweep]\n";
  out += line_of("d_from", p.sweep.d_from) + line_of("d_to", p.sweep.d_to) +
         "steps = " + std::to_string(p.sweep.steps) + "\n";
  put_point(out, p.sweep.point, p.meta.tie_u_to_n);

  for (const auto& path : p.paths) {
    out += "\n[path." + path.name + "]\n";
    out += "description = " + path.description + "\n";
    out += "months = " + std::to_string(path.months) + "\n";
    out += line_of("d0", path.dynamics.initial) + line_of("acc", path.dynamics.accrual) +
           line_of("rem", path.dynamics.remediation);
    put_point(out, path.point, p.meta.tie_u_to_n);
  }
  return out;
}

ParameterFile with_overrides(const ParameterFile& base, const Overrides& overrides) {
  pt::ptree tree = read_tree(serialize_parameters(base));
  for (const auto& [section, keys] : overrides) {
    if (section.empty())
      throw Error(ErrorKind::validation, "overrides", "override section name is empty");
    auto it = tree.find(section);
    pt::ptree& node =
        it == tree.not_found() ? tree.push_back({section, pt::ptree()})->second : it->second;
    for (const auto& [key, value] : keys) {
      if (key.empty())
        throw Error(ErrorKind::validation, section, "override key in [" + section + "] is empty");
      auto kit = node.find(key);
      if (kit == node.not_found())
        node.push_back({key, pt::ptree(value)});
      else
        kit->second.data() = value;
    }
  }
  return from_tree(tree, {});
}

ResultBundle run_all(const ParameterFile& p) {
  ResultBundle b;
  b.scenarios = run_scenarios(p.scenarios, p.categories, p.reference);
  b.sweep = run_sweep(p.sweep, p.categories, p.reference);
  b.paths = run_paths(p.paths, p.categories, p.reference);
  b.insights = headline_insights(b.scenarios, b.paths);
  b.dictionary = emit_data_dictionary();
  return b;
}

std::string scenarios_csv(std::span<const ScenarioRow> rows) {
  std::string out = "scenario,N,D,U,S,H,A,theta";
  for (Category c : kAllCategories) out += "," + std::string(to_string(c));
  out += ",tst,st_per_tx,st0_per_tx,std_per_tx";
  out += ",tst_display,st_per_tx_display,st0_per_tx_display,std_per_tx_display\n";
  for (const auto& row : rows) {
    const Point& p = row.spec.point;
    const Report& r = row.report;
    out += row.spec.name;
    for (double v : {p.n, p.d, p.u, p.s, p.h, p.a, p.theta}) out += "," + format_number(v);
    for (Category c : kAllCategories) out += "," + format_number(r[c]);
    out += "," + format_number(r.total) + "," + opt_number(r.per_tx) + "," +
           opt_number(r.baseline_per_tx) + "," + opt_number(r.debt_per_tx);
    out += "," + display(r.total, 0) + "," + opt_display(r.per_tx, 2) + "," +
           opt_display(r.baseline_per_tx, 2) + "," + opt_display(r.debt_per_tx, 2) + "\n";
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out =
      "d,tst,st_per_tx,pct_change_vs_d0,tst_display,st_per_tx_display,pct_change_display\n";
  for (const auto& row : rows) {
    std::string pct_display;
    if (row.pct_change) pct_display = display(*row.pct_change * 100.0, 0);
    out += format_number(row.d) + "," + format_number(row.total) + "," + opt_number(row.per_tx) +
           "," + opt_number(row.pct_change) + "," + display(row.total, 0) + "," +
           opt_display(row.per_tx, 2) + "," + pct_display + "\n";
  }
  return out;
}

std::string timeseries_csv(std::span<const PathSeries> paths) {
  std::string out = "month";
  for (const auto& p : paths) out += "," + p.name + "_d," + p.name + "_st_per_tx";
  for (const auto& p : paths) out += "," + p.name + "_d_display," + p.name + "_st_per_tx_display";
  out += "\n";
  std::size_t rows = 0;
  for (const auto& p : paths) rows = std::max(rows, p.points.size());
  for (std::size_t m = 0; m < rows; ++m) {
    out += std::to_string(m);
    for (const auto& p : paths) {
      if (m < p.points.size())
        out += "," + format_number(p.points[m].d) + "," + opt_number(p.points[m].per_tx);
      else
        out += ",,";
    }
    for (const auto& p : paths) {
      if (m < p.points.size())
        out += "," + display(p.points[m].d, 2) + "," + opt_display(p.points[m].per_tx, 2);
      else
        out += ",,";
    }
    out += "\n";
  }
  return out;
}

std::string insights_csv(std::span<const Insight> insights) {
  std::string out = "key,label,value,unit,value_display\n";
  for (const auto& i : insights)
    out += i.key + "," + i.label + "," + format_number(i.value) + "," + i.unit + "," +
           display(i.value, i.unit == "per_tx" ? 2 : 0) + "\n";
  return out;
}

void export_csv(const ResultBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorKind::io, dir.string(), "cannot create " + dir.string() + ": " + ec.message());
  write_text_file(dir / "scenarios.csv", scenarios_csv(bundle.scenarios));
  write_text_file(dir / "sweep.csv", sweep_csv(bundle.sweep));
  write_text_file(dir / "timeseries.csv", timeseries_csv(bundle.paths));
  write_text_file(dir / "insights.csv", insights_csv(bundle.insights));
  write_text_file(dir / "data_dictionary.txt", bundle.dictionary);
}

std::vector<CalibrationObservation<double>> parse_observations(std::string_view csv_text) {
  constexpr std::string_view kColumns = "period,category,cost,n,u,s,h,a,theta,d";
  std::vector<CalibrationObservation<double>> out;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  int line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = "observations line " + std::to_string(line_no) + ": ";
    if (header) {
      if (t != kColumns)
        throw Error(ErrorKind::parse, "observations",
                    where + "expected header '" + std::string(kColumns) + "'");
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = t.find(',', start);
      cells.push_back(trim(std::string_view(t).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 10)
      throw Error(ErrorKind::parse, "observations",
                  where + "expected 10 columns, got " + std::to_string(cells.size()));
    CalibrationObservation<double> obs;
    obs.period = cells[0];
    const auto cat = parse_category(cells[1]);
    if (!cat)
      throw Error(ErrorKind::validation, "category", where + "unknown category '" + cells[1] + "'");
    obs.category = *cat;
    constexpr std::array<std::string_view, 8> names{"cost", "n", "u", "s", "h", "a", "theta", "d"};
    std::array<double, 8> v{};
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!parse_number(cells[i + 2], v[i]))
        throw Error(ErrorKind::parse, std::string(names[i]),
                    where + std::string(names[i]) + ": expected a number, got '" + cells[i + 2] +
                        "'");
    obs.cost = v[0];
    obs.point = {v[1], v[7], v[2], v[3], v[4], v[5], v[6]};
    if (!(obs.cost >= 0.0))
      throw Error(ErrorKind::validation, "cost", where + "cost must be non-negative");
    try {
      obs.point.validate();
    } catch (const Error& e) {
      throw Error(e.kind(), e.field(), where + e.what());
    }
    out.push_back(std::move(obs));
  }
  if (header) throw Error(ErrorKind::parse, "observations", "observations file is empty");
  return out;
}

std::vector<CalibrationObservation<double>> load_observations(const std::filesystem::path& path) {
  return parse_observations(read_text_file(path));
}

std::string observations_csv(std::span<const CalibrationObservation<double>> obs) {
  std::string out = "period,category,cost,n,u,s,h,a,theta,d\n";
  for (const auto& o : obs) {
    out += o.period + "," + std::string(to_string(o.category));
    for (double v : {o.cost, o.point.n, o.point.u, o.point.s, o.point.h, o.point.a,
                     o.point.theta, o.point.d})
      out += "," + format_number(v);
    out += "\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, path.string(), "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, path.string(), "cannot write " + path.string());
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw Error(ErrorKind::io, path.string(), "write failed for " + path.string());
}

}  // namespace atd
