#pragma once

// Debt stock: the six-component debt vector, its accumulation rules, the
// workflow-level index and the dollar principal.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "atd/errors.hpp"

namespace atd {

enum class Component : std::size_t { ctx, tool, mem, orch, obs, plat };

inline constexpr std::size_t kComponentCount = 6;
inline constexpr std::size_t kComponentPairCount = 15;

inline constexpr std::array<Component, kComponentCount> kAllComponents{
    Component::ctx, Component::tool, Component::mem,
    Component::orch, Component::obs, Component::plat};

constexpr std::string_view to_string(Component c) {
  constexpr std::array<std::string_view, kComponentCount> names{
      "ctx", "tool", "mem", "orch", "obs", "plat"};
  return names[static_cast<std::size_t>(c)];
}

inline bool parse_component(std::string_view token, Component& out) {
  for (Component c : kAllComponents) {
    if (to_string(c) == token) {
      out = c;
      return true;
    }
  }
  return false;
}

/// The fifteen unordered pairs (i < j) in canonical order.
inline constexpr std::array<std::pair<Component, Component>, kComponentPairCount>
component_pairs() {
  std::array<std::pair<Component, Component>, kComponentPairCount> out{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < kComponentCount; ++i)
    for (std::size_t j = i + 1; j < kComponentCount; ++j)
      out[n++] = {kAllComponents[i], kAllComponents[j]};
  return out;
}

template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

template <typename Scalar>
Scalar clamp_unit(Scalar x) {
  using std::isfinite;
  if (!isfinite(x))
    throw Error(ErrorKind::invalid_input, "", "clamp_unit: non-finite input");
  return x < Scalar(0) ? Scalar(0) : (x > Scalar(1) ? Scalar(1) : x);
}

namespace detail {

template <typename Scalar>
void require_unit(Scalar x, std::string_view field) {
  if (!(x >= Scalar(0) && x <= Scalar(1)))
    throw Error(ErrorKind::validation, std::string(field),
                std::string(field) + " must lie in [0,1]");
}

template <typename Scalar>
void require_nonnegative(Scalar x, std::string_view field) {
  using std::isfinite;
  if (!(x >= Scalar(0)) || !isfinite(x))
    throw Error(ErrorKind::validation, std::string(field),
                std::string(field) + " must be finite and non-negative");
}

template <typename Derived>
void require_unit_all(const Eigen::MatrixBase<Derived>& v, std::string_view field) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    require_unit(v(i), std::string(field) + "." +
                           std::string(to_string(kAllComponents[std::size_t(i)])));
}

// Symmetric pair matrices store the coefficient on both (i,j) and (j,i);
// evaluation reads only the strict upper triangle.
template <typename Scalar>
Scalar pair_form(const Matrix6<Scalar>& m, const Vector6<Scalar>& d) {
  Scalar s(0);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) s += m(i, j) * d(i) * d(j);
  return s;
}

}  // namespace detail

/// Component scores, each in [0,1].
template <typename Scalar>
class DebtComponents {
 public:
  DebtComponents() : values_(Vector6<Scalar>::Zero()) {}

  explicit DebtComponents(const Vector6<Scalar>& values) : values_(values) {
    detail::require_unit_all(values_, "debt");
  }

  static DebtComponents constant(Scalar v) {
    return DebtComponents(Vector6<Scalar>::Constant(v));
  }

  Scalar operator[](Component c) const { return values_(static_cast<Eigen::Index>(c)); }

  DebtComponents with(Component c, Scalar v) const {
    Vector6<Scalar> next = values_;
    next(static_cast<Eigen::Index>(c)) = v;
    return DebtComponents(next);
  }

  const Vector6<Scalar>& vector() const { return values_; }

  friend bool operator==(const DebtComponents& a, const DebtComponents& b) {
    return a.values_ == b.values_;
  }

 private:
  Vector6<Scalar> values_;
};

/// Drivers of one component's accumulation over one period.
template <typename Scalar>
struct ComponentDynamicsInputs {
  Scalar remediation{0};        // R
  Scalar remediation_gain{0};   // phi
  Scalar change_pressure{0};    // X
  Scalar shortcut_intensity{0}; // Q
  Scalar governance{0};         // G
  Scalar platform_volatility{0};
  Scalar exposure{0};           // E
  Scalar local_gain{0};         // alpha
  Scalar platform_gain{0};      // zeta

  void validate() const {
    detail::require_unit(remediation, "remediation");
    detail::require_unit(change_pressure, "change_pressure");
    detail::require_unit(shortcut_intensity, "shortcut_intensity");
    detail::require_unit(governance, "governance");
    detail::require_unit(exposure, "exposure");
    detail::require_nonnegative(remediation_gain, "remediation_gain");
    detail::require_nonnegative(platform_volatility, "platform_volatility");
    detail::require_nonnegative(local_gain, "local_gain");
    detail::require_nonnegative(platform_gain, "platform_gain");
  }
};

template <typename Scalar>
struct StepResult {
  Scalar value;
  // phi * R > 1: the persistence factor went negative before clamping.
  bool negative_decay = false;
};

/// One period of the full component rule: decay by remediation, then local
/// and platform accrual, clamped once to [0,1].
template <typename Scalar>
StepResult<Scalar> debt_step_full(Scalar d, const ComponentDynamicsInputs<Scalar>& in) {
  detail::require_unit(d, "d");
  in.validate();
  const Scalar decay = Scalar(1) - in.remediation_gain * in.remediation;
  const Scalar local = in.local_gain * in.change_pressure * in.shortcut_intensity *
                       (Scalar(1) - in.governance);
  const Scalar platform = in.platform_gain * in.platform_volatility * in.exposure;
  return {clamp_unit(decay * d + local + platform), decay < Scalar(0)};
}

/// Applies debt_step_full to every component with its own inputs.
template <typename Scalar>
std::pair<DebtComponents<Scalar>, bool> step_components(
    const DebtComponents<Scalar>& d,
    const std::array<ComponentDynamicsInputs<Scalar>, kComponentCount>& inputs) {
  Vector6<Scalar> next;
  bool flagged = false;
  for (std::size_t i = 0; i < kComponentCount; ++i) {
    auto r = debt_step_full(d[kAllComponents[i]], inputs[i]);
    next(Eigen::Index(i)) = r.value;
    flagged = flagged || r.negative_decay;
  }
  return {DebtComponents<Scalar>(next), flagged};
}

/// Workflow-level net-change rule used by the time-series simulation.
template <typename Scalar>
struct SimpleDebtDynamics {
  Scalar accrual{0};
  Scalar remediation{0};
  Scalar initial{0};

  void validate(std::string_view prefix = "") const {
    const std::string p(prefix);
    detail::require_nonnegative(accrual, p + "acc");
    detail::require_nonnegative(remediation, p + "rem");
    detail::require_unit(initial, p + "d0");
  }

  friend bool operator==(const SimpleDebtDynamics&, const SimpleDebtDynamics&) = default;
};

template <typename Scalar>
Scalar debt_step_simple(Scalar D, const SimpleDebtDynamics<Scalar>& dyn) {
  detail::require_unit(D, "d");
  detail::require_nonnegative(dyn.accrual, "acc");
  detail::require_nonnegative(dyn.remediation, "rem");
  return clamp_unit(D + dyn.accrual - dyn.remediation);
}

template <typename Scalar>
struct DebtIndexWeights {
  Vector6<Scalar> component = Vector6<Scalar>::Constant(Scalar(1) / Scalar(6));
  Matrix6<Scalar> coupling = Matrix6<Scalar>::Zero();

  DebtIndexWeights& set_coupling(Component a, Component b, Scalar w) {
    const auto i = static_cast<Eigen::Index>(a), j = static_cast<Eigen::Index>(b);
    coupling(i, j) = w;
    coupling(j, i) = w;
    return *this;
  }

  Scalar coupling_of(Component a, Component b) const {
    return coupling(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

  void validate() const {
    for (std::size_t i = 0; i < kComponentCount; ++i)
      detail::require_nonnegative(component(Eigen::Index(i)),
                                  "debt.weight." + std::string(to_string(kAllComponents[i])));
    for (auto [a, b] : component_pairs())
      detail::require_nonnegative(coupling_of(a, b), "debt.coupling." +
                                                         std::string(to_string(a)) + "_" +
                                                         std::string(to_string(b)));
  }

  friend bool operator==(const DebtIndexWeights&, const DebtIndexWeights&) = default;
};

/// Weighted index with optional pairwise coupling. Weights are not
/// normalized; sums above 1 are clamped.
template <typename Scalar>
Scalar debt_index(const DebtComponents<Scalar>& d, const DebtIndexWeights<Scalar>& w) {
  w.validate();
  const Vector6<Scalar>& v = d.vector();
  return clamp_unit(w.component.dot(v) + detail::pair_form(w.coupling, v));
}

template <typename Scalar>
struct PrincipalCosts {
  Vector6<Scalar> remediation = Vector6<Scalar>::Zero();
  Matrix6<Scalar> coordination = Matrix6<Scalar>::Zero();
  Scalar retest{0};

  PrincipalCosts& set_coordination(Component a, Component b, Scalar c) {
    const auto i = static_cast<Eigen::Index>(a), j = static_cast<Eigen::Index>(b);
    coordination(i, j) = c;
    coordination(j, i) = c;
    return *this;
  }

  Scalar coordination_of(Component a, Component b) const {
    return coordination(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

  void validate() const {
    for (std::size_t i = 0; i < kComponentCount; ++i)
      detail::require_nonnegative(remediation(Eigen::Index(i)),
                                  "debt.cost_rem." + std::string(to_string(kAllComponents[i])));
    for (auto [a, b] : component_pairs())
      detail::require_nonnegative(coordination_of(a, b), "debt.cost_coord." +
                                                             std::string(to_string(a)) + "_" +
                                                             std::string(to_string(b)));
    detail::require_nonnegative(retest, "debt.cost_retest");
  }

  friend bool operator==(const PrincipalCosts&, const PrincipalCosts&) = default;
};

/// Estimated cost of remediating the whole debt stock.
template <typename Scalar>
Scalar debt_principal(const DebtComponents<Scalar>& d, const PrincipalCosts<Scalar>& costs) {
  costs.validate();
  const Vector6<Scalar>& v = d.vector();
  return costs.remediation.dot(v) + detail::pair_form(costs.coordination, v) + costs.retest;
}

}  // namespace atd
