#pragma once

// Observed-cost rules (logs and invoices to category dollars) and debt
// sensitivity calibration from observations.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "atd/errors.hpp"
#include "atd/tax_model.hpp"

namespace atd {

enum class CalibrationStatus { expert_prior, before_after, regression, validated };

constexpr std::string_view to_string(CalibrationStatus s) {
  switch (s) {
    case CalibrationStatus::expert_prior: return "expert_prior";
    case CalibrationStatus::before_after: return "before_after";
    case CalibrationStatus::regression: return "regression";
    case CalibrationStatus::validated: return "validated";
  }
  return "expert_prior";
}

inline std::optional<CalibrationStatus> parse_calibration_status(std::string_view token) {
  for (auto s : {CalibrationStatus::expert_prior, CalibrationStatus::before_after,
                 CalibrationStatus::regression, CalibrationStatus::validated})
    if (to_string(s) == token) return s;
  return std::nullopt;
}

namespace detail {

template <typename Scalar>
void require_measure(Scalar v, std::string_view field) {
  if (!(v >= Scalar(0)) || !std::isfinite(v))
    throw Error(ErrorKind::validation, std::string(field),
                std::string(field) + " must be finite and non-negative");
}

}  // namespace detail

template <typename Scalar>
struct ResourceLine {
  Category category = Category::evaluation;
  std::string resource;  // e.g. "judge-calls", "reviewer-hours"
  Scalar quantity{0};
  Scalar unit_price{0};
};

/// Observed fixed cost plus quantity x price over the category's resources.
template <typename Scalar>
Scalar direct_cost(Scalar fixed, std::span<const ResourceLine<Scalar>> lines) {
  detail::require_measure(fixed, "fixed");
  Scalar total = fixed;
  for (const auto& line : lines) {
    if (line.category != lines.front().category)
      throw Error(ErrorKind::invalid_input, "category",
                  "direct_cost: resource lines span more than one category");
    detail::require_measure(line.quantity, "quantity");
    detail::require_measure(line.unit_price, "unit_price");
    total += line.quantity * line.unit_price;
  }
  return total;
}

template <typename Scalar>
struct EventRateSpec {
  std::string event;
  Scalar rate{0};       // events per transaction, in [0,1]
  Scalar unit_cost{0};  // currency per event
};

template <typename Scalar>
Scalar event_cost(Scalar n, const EventRateSpec<Scalar>& spec) {
  detail::require_measure(n, "n");
  if (!(spec.rate >= Scalar(0) && spec.rate <= Scalar(1)))
    throw Error(ErrorKind::validation, "rate", "rate must lie in [0,1]");
  detail::require_measure(spec.unit_cost, "unit_cost");
  return n * spec.rate * spec.unit_cost;
}

template <typename Scalar>
struct TokenCostSpec {
  Scalar tokens_per_tx{0};
  Scalar price_per_1k{0};
  Scalar compute{0};  // per-period charges outside the token price
};

template <typename Scalar>
Scalar token_cost(Scalar n, const TokenCostSpec<Scalar>& spec) {
  detail::require_measure(n, "n");
  detail::require_measure(spec.tokens_per_tx, "tokens_per_tx");
  detail::require_measure(spec.price_per_1k, "price_per_1k");
  detail::require_measure(spec.compute, "compute");
  return n * (spec.tokens_per_tx / Scalar(1000)) * spec.price_per_1k + spec.compute;
}

template <typename Scalar>
struct LatencyCostSpec {
  Scalar expected_excess{0};  // E[(L - L*)+] per transaction
  Scalar cost_per_unit{0};
};

template <typename Scalar>
Scalar latency_cost(Scalar n, const LatencyCostSpec<Scalar>& spec) {
  detail::require_measure(n, "n");
  detail::require_measure(spec.expected_excess, "expected_excess");
  detail::require_measure(spec.cost_per_unit, "cost_per_unit");
  return n * spec.cost_per_unit * spec.expected_excess;
}

template <typename Scalar>
struct CalibrationObservation {
  std::string period;
  Category category = Category::evaluation;
  Scalar cost{0};
  OperatingPoint<Scalar> point;  // point.d is the observed debt index
};

/// Observed cost divided by floor x exposure amplifier; equals 1 + beta*D
/// when the observation follows the structural model.
template <typename Scalar>
Scalar z_norm(const CalibrationObservation<Scalar>& obs, const CategoryParams<Scalar>& p,
              const ReferencePoint<Scalar>& ref) {
  detail::require_measure(obs.cost, "cost");
  obs.point.validate();
  const Scalar denom = (p.fixed + p.variable * obs.point.n) * psi(p, obs.point, ref);
  if (!(denom > Scalar(0)))
    throw Error(ErrorKind::degenerate_observation, "cost",
                "z_norm: zero baseline floor for category " +
                    std::string(to_string(obs.category)) + " in period " + obs.period);
  return obs.cost / denom;
}

template <typename Scalar>
Scalar beta_estimate(const CalibrationObservation<Scalar>& first,
                     const CalibrationObservation<Scalar>& second,
                     const CategoryParams<Scalar>& p, const ReferencePoint<Scalar>& ref) {
  if (first.category != second.category)
    throw Error(ErrorKind::invalid_input, "category",
                "beta_estimate: observations belong to different categories");
  if (first.point.d == second.point.d)
    throw Error(ErrorKind::ill_posed, "d",
                "beta_estimate: both observations have the same debt index");
  return (z_norm(second, p, ref) - z_norm(first, p, ref)) / (second.point.d - first.point.d);
}

template <typename Scalar>
struct BetaFit {
  Scalar beta{0};
  Scalar residual_ss{0};
  std::size_t observations = 0;
};

/// Least squares of Z - 1 on D through the origin (the amplifier pins
/// Z(0) = 1). Two observations use the two-point slope directly.
template <typename Scalar>
BetaFit<Scalar> beta_fit(std::span<const CalibrationObservation<Scalar>> obs,
                         const CategoryParams<Scalar>& p, const ReferencePoint<Scalar>& ref) {
  if (obs.size() < 2)
    throw Error(ErrorKind::ill_posed, "observations",
                "beta_fit: at least two observations are required");
  for (const auto& o : obs)
    if (o.category != obs.front().category)
      throw Error(ErrorKind::invalid_input, "category",
                  "beta_fit: observations belong to different categories");

  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(obs.size());
  Vec debt(n), excess(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    debt(i) = obs[std::size_t(i)].point.d;
    excess(i) = z_norm(obs[std::size_t(i)], p, ref) - Scalar(1);
  }
  if ((debt.array() == debt(0)).all())
    throw Error(ErrorKind::ill_posed, "d", "beta_fit: all observations share one debt index");

  BetaFit<Scalar> fit;
  fit.observations = obs.size();
  if (n == 2)
    fit.beta = beta_estimate(obs[0], obs[1], p, ref);
  else
    fit.beta = debt.dot(excess) / debt.squaredNorm();
  fit.residual_ss = (excess - fit.beta * debt).squaredNorm();
  return fit;
}

/// Observed category costs next to the structural prediction. The two are
/// never merged.
template <typename Scalar>
struct Reconciliation {
  CategoryVector<Scalar> observed;
  CategoryVector<Scalar> predicted;
  CategoryVector<Scalar> difference;  // observed - predicted
};

template <typename Scalar>
Reconciliation<Scalar> reconcile(const CategoryVector<Scalar>& observed,
                                 const CategoryTable<Scalar>& table,
                                 const OperatingPoint<Scalar>& op,
                                 const ReferencePoint<Scalar>& ref) {
  const auto report = evaluate(table, op, ref);
  return {observed, report.cost, observed - report.cost};
}

}  // namespace atd
