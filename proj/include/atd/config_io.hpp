#pragma once

// Parameter files, result export and observation ingestion.
//
// Parameter files are INI-style text; the grammar is documented in
// docs/parameter_format.md. Loading always runs full validation, so a
// ParameterFile obtained from here is safe to hand to any model operation.

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "atd/debt_model.hpp"
#include "atd/measurement.hpp"
#include "atd/scenario_engine.hpp"

namespace atd {

struct Metadata {
  std::string currency = "USD";
  std::string period = "month";
  bool tie_u_to_n = true;

  friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct DebtSection {
  DebtComponents<double> components;
  DebtIndexWeights<double> weights;
  PrincipalCosts<double> costs;

  friend bool operator==(const DebtSection&, const DebtSection&) = default;
};

struct ParameterFile {
  Metadata meta;
  Reference reference;
  Categories categories;
  std::array<CalibrationStatus, kCategoryCount> status{};
  DebtSection debt;
  std::vector<ScenarioSpec> scenarios;
  SweepSpec sweep;
  std::vector<PathSpec> paths;

  CalibrationStatus status_of(Category c) const { return status[std::size_t(c)]; }
  const ScenarioSpec* find_scenario(std::string_view name) const;

  friend bool operator==(const ParameterFile&, const ParameterFile&) = default;
};

/// Section name -> key -> raw value text, the shape of a partial file.
using Overrides = std::map<std::string, std::map<std::string, std::string>>;

ParameterFile default_parameters();

ParameterFile parse_parameters(std::string_view text);
ParameterFile load_parameters(const std::filesystem::path& path);

/// Canonical text form; parse_parameters(serialize_parameters(p)) == p.
std::string serialize_parameters(const ParameterFile& params);

/// Re-checks every invariant of an in-memory ParameterFile. Returns
/// non-fatal warnings (negative exposure coefficients).
std::vector<std::string> validate(const ParameterFile& params);

/// Layers a partial file over `base` and re-validates the result with the
/// same rules as file loading. `base` is not modified.
ParameterFile with_overrides(const ParameterFile& base, const Overrides& overrides);

struct ResultBundle {
  std::vector<ScenarioRow> scenarios;
  std::vector<SweepRow> sweep;
  std::vector<PathSeries> paths;
  std::vector<Insight> insights;
  std::string dictionary;
};

ResultBundle run_all(const ParameterFile& params);

std::string scenarios_csv(std::span<const ScenarioRow> rows);
std::string sweep_csv(std::span<const SweepRow> rows);
std::string timeseries_csv(std::span<const PathSeries> paths);
std::string insights_csv(std::span<const Insight> insights);

/// Writes scenarios.csv, sweep.csv, timeseries.csv, insights.csv and
/// data_dictionary.txt into `dir`, creating it if needed.
void export_csv(const ResultBundle& bundle, const std::filesystem::path& dir);

std::vector<CalibrationObservation<double>> parse_observations(std::string_view csv_text);
std::vector<CalibrationObservation<double>> load_observations(const std::filesystem::path& path);
std::string observations_csv(std::span<const CalibrationObservation<double>> obs);

std::string emit_data_dictionary();

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace atd
