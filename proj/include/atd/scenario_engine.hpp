#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atd/debt_model.hpp"
#include "atd/measurement.hpp"
#include "atd/tax_model.hpp"

namespace atd {

using Point = OperatingPoint<double>;
using Reference = ReferencePoint<double>;
using Categories = CategoryTable<double>;
using Report = TaxReport<double>;

struct ScenarioSpec {
  std::string name;
  std::string description;
  Point point;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Evenly spaced debt values from d_from to d_to inclusive at a fixed point
/// (the point's own D is ignored).
struct SweepSpec {
  double d_from = 0.0;
  double d_to = 1.0;
  int steps = 5;
  Point point;

  void validate() const;
  std::vector<double> grid() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// A month-by-month path under the simple net-change rule. The point's D is
/// replaced by dynamics.initial.
struct PathSpec {
  std::string name;
  std::string description;
  int months = 12;
  SimpleDebtDynamics<double> dynamics;
  Point point;

  void validate() const;

  friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

struct ScenarioRow {
  ScenarioSpec spec;
  Report report;
};

struct SweepRow {
  double d = 0.0;
  double total = 0.0;
  std::optional<double> per_tx;
  std::optional<double> pct_change;  // relative to D = 0 at the same point
};

struct PathPoint {
  int month = 0;
  double d = 0.0;
  double total = 0.0;
  std::optional<double> per_tx;
};

struct PathSeries {
  std::string name;
  double transactions = 0.0;
  std::vector<PathPoint> points;
};

struct Insight {
  std::string key;
  std::string label;
  double value = 0.0;
  std::string unit;  // "per_tx", "per_month" or "per_year"
};

// Shipped accounts-payable calibration.
Categories default_categories();
Reference default_reference();
std::vector<ScenarioSpec> default_scenarios();
SweepSpec default_sweep();
std::vector<PathSpec> default_paths();

std::vector<ScenarioRow> run_scenarios(std::span<const ScenarioSpec> suite,
                                       const Categories& categories, const Reference& ref);

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Categories& categories,
                                const Reference& ref);

/// Each month reports the tax at start-of-month debt, then advances D.
std::vector<PathSeries> run_paths(std::span<const PathSpec> specs, const Categories& categories,
                                  const Reference& ref);

struct CategoryCalibration {
  Category category = Category::evaluation;
  std::size_t observations = 0;
  std::optional<BetaFit<double>> fit;
  std::string diagnostic;  // set when the fit is ill-posed or degenerate
};

/// Fits beta per category from a mixed list of observations. A category that
/// cannot be fitted gets a diagnostic; the others are unaffected.
std::vector<CategoryCalibration> calibrate_categories(
    std::span<const CalibrationObservation<double>> observations, const Categories& categories,
    const Reference& ref);

/// Scale-economy and governance-gap figures. Needs scenarios S1, S2, S4 and
/// paths A, B; figures whose inputs are missing are left out.
std::vector<Insight> headline_insights(std::span<const ScenarioRow> scenarios,
                                       std::span<const PathSeries> paths);

}  // namespace atd
