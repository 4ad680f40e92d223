#include "atd/scenario_engine.hpp"

#include <algorithm>
#include <string>

namespace atd {

Categories default_categories() {
  using C = Category;
  Categories t;
  //                               F      V      beta  gU    gS    gH    gA    gTheta
  t.set(C::evaluation,            {200.0, 0.010, 1.2, 0.12, 0.08, 0.08, 0.12, 0.15});
  t.set(C::monitoring,            {350.0, 0.005, 0.4, 0.10, 0.06, 0.04, 0.06, 0.08});
  t.set(C::retry_repair,          {0.0,   0.040, 2.5, 0.07, 0.05, 0.12, 0.10, 0.12});
  t.set(C::escalation,            {80.0,  0.120, 1.0, 0.08, 0.06, 0.10, 0.18, 0.08});
  t.set(C::revalidation,          {400.0, 0.002, 1.8, 0.10, 0.12, 0.12, 0.10, 0.20});
  t.set(C::latency_delay,         {50.0,  0.030, 0.8, 0.05, 0.05, 0.18, 0.15, 0.10});
  t.set(C::token_compute_context, {0.0,   0.200, 0.6, 0.03, 0.08, 0.12, 0.08, 0.08});
  t.set(C::security_guardrails,   {150.0, 0.008, 0.3, 0.15, 0.18, 0.05, 0.20, 0.12});
  return t;
}

Reference default_reference() { return {1000.0, 5.0, 4.0, 0.40, 0.30}; }

namespace {

// U tied to N; H, A and Theta at reference.
Point scenario_point(double n, double d, double s) { return {n, d, n, s, 4.0, 0.40, 0.30}; }

}  // namespace

std::vector<ScenarioSpec> default_scenarios() {
  return {
      {"S1", "Low adoption, low debt: carefully governed pilot", scenario_point(1000, 0.10, 5)},
      {"S2", "High adoption, low debt: scaled with disciplined governance",
       scenario_point(10000, 0.10, 15)},
      {"S3", "Low adoption, high debt: pilot with accumulated debt", scenario_point(1000, 0.60, 5)},
      {"S4", "High adoption, high debt: scaled with accumulated debt",
       scenario_point(10000, 0.60, 15)},
  };
}

SweepSpec default_sweep() { return {0.0, 1.0, 5, scenario_point(10000, 0.0, 15)}; }

std::vector<PathSpec> default_paths() {
  return {
      {"A", "Accumulation regime", 12, {0.06, 0.02, 0.10}, scenario_point(10000, 0.10, 15)},
      {"B", "Governance regime", 12, {0.03, 0.07, 0.10}, scenario_point(10000, 0.10, 15)},
  };
}

void SweepSpec::validate() const {
  auto unit = [](double v, const char* field) {
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorKind::validation, field, std::string(field) + " must lie in [0,1]");
  };
  unit(d_from, "sweep.d_from");
  unit(d_to, "sweep.d_to");
  if (!(d_from < d_to))
    throw Error(ErrorKind::validation, "sweep.d_to", "sweep.d_to must exceed sweep.d_from");
  if (steps < 2)
    throw Error(ErrorKind::validation, "sweep.steps", "sweep.steps must be at least 2");
  point.with_debt(0.0).validate("sweep.");
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> out;
  out.reserve(std::size_t(steps));
  const double width = d_to - d_from;
  for (int i = 0; i < steps; ++i) out.push_back(d_from + width * i / (steps - 1));
  out.back() = d_to;
  return out;
}

void PathSpec::validate() const {
  const std::string prefix = "path." + name + ".";
  if (months < 1)
    throw Error(ErrorKind::validation, prefix + "months", prefix + "months must be at least 1");
  dynamics.validate(prefix);
  point.with_debt(dynamics.initial).validate(prefix);
}

std::vector<ScenarioRow> run_scenarios(std::span<const ScenarioSpec> suite,
                                       const Categories& categories, const Reference& ref) {
  std::vector<ScenarioRow> rows;
  rows.reserve(suite.size());
  for (const auto& spec : suite) rows.push_back({spec, evaluate(categories, spec.point, ref)});
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Categories& categories,
                                const Reference& ref) {
  spec.validate();
  const double zero_total = evaluate(categories, spec.point.with_debt(0.0), ref).total;
  std::vector<SweepRow> rows;
  for (double d : spec.grid()) {
    const Report r = evaluate(categories, spec.point.with_debt(d), ref);
    SweepRow row{d, r.total, r.per_tx, std::nullopt};
    if (zero_total > 0.0) row.pct_change = r.total / zero_total - 1.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<PathSeries> run_paths(std::span<const PathSpec> specs, const Categories& categories,
                                  const Reference& ref) {
  std::vector<PathSeries> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    spec.validate();
    PathSeries series{spec.name, spec.point.n, {}};
    double d = spec.dynamics.initial;
    for (int m = 0; m <= spec.months; ++m) {
      const Report r = evaluate(categories, spec.point.with_debt(d), ref);
      series.points.push_back({m, d, r.total, r.per_tx});
      d = debt_step_simple(d, spec.dynamics);
    }
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<Insight> headline_insights(std::span<const ScenarioRow> scenarios,
                                       std::span<const PathSeries> paths) {
  auto per_tx_of = [&](const std::string& name) -> std::optional<double> {
    auto it = std::find_if(scenarios.begin(), scenarios.end(),
                           [&](const ScenarioRow& r) { return r.spec.name == name; });
    if (it == scenarios.end()) return std::nullopt;
    return it->report.per_tx;
  };
  auto path_of = [&](const std::string& name) -> const PathSeries* {
    auto it = std::find_if(paths.begin(), paths.end(),
                           [&](const PathSeries& p) { return p.name == name; });
    return it == paths.end() ? nullptr : &*it;
  };

  std::vector<Insight> out;
  const auto s1 = per_tx_of("S1"), s2 = per_tx_of("S2"), s4 = per_tx_of("S4");
  if (s1 && s2)
    out.push_back({"scale_drop_low_debt", "Per-tx drop scaling S1 to S2", *s1 - *s2, "per_tx"});
  if (s1 && s4)
    out.push_back({"scale_drop_high_debt", "Per-tx drop scaling S1 to S4", *s1 - *s4, "per_tx"});
  if (s1 && s2 && s4)
    out.push_back({"scale_economy_lost_to_debt", "Scale economy lost to debt", *s4 - *s2,
                   "per_tx"});

  const PathSeries* a = path_of("A");
  const PathSeries* b = path_of("B");
  if (a && b && !a->points.empty() && !b->points.empty() && a->points.back().per_tx &&
      b->points.back().per_tx) {
    const double gap = *a->points.back().per_tx - *b->points.back().per_tx;
    const int month = std::min(a->points.back().month, b->points.back().month);
    const double monthly = gap * a->transactions;
    out.push_back({"path_gap_per_tx", "Path A minus path B at month " + std::to_string(month), gap,
                   "per_tx"});
    out.push_back({"path_gap_monthly", "Monthly cost of the path gap", monthly, "per_month"});
    out.push_back({"path_gap_annual", "Annualized cost of the path gap", 12.0 * monthly,
                   "per_year"});
  }
  return out;
}

std::vector<CategoryCalibration> calibrate_categories(
    std::span<const CalibrationObservation<double>> observations, const Categories& categories,
    const Reference& ref) {
  std::vector<CategoryCalibration> out;
  for (Category c : kAllCategories) {
    std::vector<CalibrationObservation<double>> mine;
    for (const auto& o : observations)
      if (o.category == c) mine.push_back(o);
    if (mine.empty()) continue;
    CategoryCalibration result{c, mine.size(), std::nullopt, {}};
    try {
      result.fit = beta_fit<double>(mine, categories[c], ref);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ill_posed && e.kind() != ErrorKind::degenerate_observation)
        throw;
      result.diagnostic = std::string(to_string(e.kind())) + ": " + e.what();
    }
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace atd
