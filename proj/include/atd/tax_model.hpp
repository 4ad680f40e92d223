#pragma once

// Recurring-cost model: per-category cost = floor x debt amplifier x exposure
// amplifier, with totals, per-transaction averages and the split into a
// zero-debt baseline and a debt-amplified remainder.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "atd/errors.hpp"

namespace atd {

enum class Category : std::size_t {
  evaluation,
  monitoring,
  retry_repair,
  escalation,
  revalidation,
  latency_delay,
  token_compute_context,
  security_guardrails,
};

inline constexpr std::size_t kCategoryCount = 8;

inline constexpr std::array<Category, kCategoryCount> kAllCategories{
    Category::evaluation,    Category::monitoring,    Category::retry_repair,
    Category::escalation,    Category::revalidation,  Category::latency_delay,
    Category::token_compute_context, Category::security_guardrails};

constexpr std::string_view to_string(Category c) {
  constexpr std::array<std::string_view, kCategoryCount> names{
      "evaluation",   "monitoring",    "retry_repair",          "escalation",
      "revalidation", "latency_delay", "token_compute_context", "security_guardrails"};
  return names[static_cast<std::size_t>(c)];
}

constexpr std::string_view display_name(Category c) {
  constexpr std::array<std::string_view, kCategoryCount> names{
      "Evaluation",   "Monitoring",        "Retry and repair",           "Escalation",
      "Revalidation", "Latency and delay", "Token, compute, and context", "Security and guardrails"};
  return names[static_cast<std::size_t>(c)];
}

inline std::optional<Category> parse_category(std::string_view token) {
  for (Category c : kAllCategories)
    if (to_string(c) == token) return c;
  return std::nullopt;
}

constexpr Eigen::Index index_of(Category c) { return static_cast<Eigen::Index>(c); }

template <typename Scalar>
using CategoryVector = Eigen::Matrix<Scalar, 8, 1>;

// Exposure drivers, in column order of the coefficient matrix.
enum class Driver : Eigen::Index { adoption, surface, horizon, autonomy, variability };
inline constexpr Eigen::Index kDriverCount = 5;

template <typename Scalar>
using ExposureVector = Eigen::Matrix<Scalar, 5, 1>;

template <typename Scalar>
struct CategoryParams {
  Scalar fixed{0};     // F, currency per period
  Scalar variable{0};  // V, currency per transaction
  Scalar beta{0};
  Scalar gamma_u{0};
  Scalar gamma_s{0};
  Scalar gamma_h{0};
  Scalar gamma_a{0};
  Scalar gamma_theta{0};

  ExposureVector<Scalar> gamma() const {
    ExposureVector<Scalar> g;
    g << gamma_u, gamma_s, gamma_h, gamma_a, gamma_theta;
    return g;
  }

  friend bool operator==(const CategoryParams&, const CategoryParams&) = default;
};

/// The eight calibrated categories, stored column-wise so that a full
/// evaluation is a handful of vector expressions.
template <typename Scalar>
struct CategoryTable {
  CategoryVector<Scalar> fixed = CategoryVector<Scalar>::Zero();
  CategoryVector<Scalar> variable = CategoryVector<Scalar>::Zero();
  CategoryVector<Scalar> beta = CategoryVector<Scalar>::Zero();
  Eigen::Matrix<Scalar, 8, 5> gamma = Eigen::Matrix<Scalar, 8, 5>::Zero();

  CategoryParams<Scalar> operator[](Category c) const {
    const Eigen::Index k = index_of(c);
    return {fixed(k),    variable(k), beta(k),    gamma(k, 0),
            gamma(k, 1), gamma(k, 2), gamma(k, 3), gamma(k, 4)};
  }

  CategoryTable& set(Category c, const CategoryParams<Scalar>& p) {
    const Eigen::Index k = index_of(c);
    fixed(k) = p.fixed;
    variable(k) = p.variable;
    beta(k) = p.beta;
    gamma.row(k) = p.gamma().transpose();
    return *this;
  }

  /// Throws on a violated invariant; returns the names of negative exposure
  /// coefficients, which are accepted but worth a warning.
  std::vector<std::string> validate() const {
    using std::isfinite;
    std::vector<std::string> warnings;
    constexpr std::array<std::string_view, 5> gamma_keys{"gamma_u", "gamma_s", "gamma_h",
                                                         "gamma_a", "gamma_theta"};
    for (Category c : kAllCategories) {
      const Eigen::Index k = index_of(c);
      const std::string prefix = "category." + std::string(to_string(c)) + ".";
      auto nonneg = [&](Scalar v, std::string_view key) {
        if (!(v >= Scalar(0)) || !isfinite(v))
          throw Error(ErrorKind::validation, prefix + std::string(key),
                      prefix + std::string(key) + " must be finite and non-negative");
      };
      nonneg(fixed(k), "f");
      nonneg(variable(k), "v");
      nonneg(beta(k), "beta");
      for (Eigen::Index j = 0; j < kDriverCount; ++j) {
        const std::string key = prefix + std::string(gamma_keys[std::size_t(j)]);
        if (!isfinite(gamma(k, j)))
          throw Error(ErrorKind::validation, key, key + " must be finite");
        if (gamma(k, j) < Scalar(0)) warnings.push_back(key);
      }
    }
    return warnings;
  }

  friend bool operator==(const CategoryTable&, const CategoryTable&) = default;
};

template <typename Scalar>
struct ReferencePoint {
  Scalar u0{1};
  Scalar s0{1};
  Scalar h0{1};
  Scalar a0{0};
  Scalar theta0{0};

  void validate() const {
    auto positive = [](Scalar v, const char* field) {
      if (!(v > Scalar(0)) || !std::isfinite(v))
        throw Error(ErrorKind::validation, field, std::string(field) + " must be positive");
    };
    auto unit = [](Scalar v, const char* field) {
      if (!(v >= Scalar(0) && v <= Scalar(1)))
        throw Error(ErrorKind::validation, field, std::string(field) + " must lie in [0,1]");
    };
    positive(u0, "reference.u0");
    positive(s0, "reference.s0");
    positive(h0, "reference.h0");
    unit(a0, "reference.a0");
    unit(theta0, "reference.theta0");
  }

  friend bool operator==(const ReferencePoint&, const ReferencePoint&) = default;
};

template <typename Scalar>
struct OperatingPoint {
  Scalar n{0};  // completed transactions
  Scalar d{0};  // debt index
  Scalar u{1};
  Scalar s{1};
  Scalar h{1};
  Scalar a{0};
  Scalar theta{0};

  OperatingPoint with_debt(Scalar debt) const {
    OperatingPoint p = *this;
    p.d = debt;
    return p;
  }

  /// U, S and H enter through logarithms, so non-positive values are a
  /// domain error; the remaining bounds are plain validation errors.
  void validate(std::string_view prefix = "") const {
    const std::string p(prefix);
    auto positive = [&](Scalar v, const char* key) {
      if (!(v > Scalar(0)) || !std::isfinite(v))
        throw Error(ErrorKind::domain, p + key,
                    p + key + " must be positive (log of a non-positive ratio)");
    };
    auto unit = [&](Scalar v, const char* key) {
      if (!(v >= Scalar(0) && v <= Scalar(1)))
        throw Error(ErrorKind::validation, p + key, p + key + " must lie in [0,1]");
    };
    if (!(n >= Scalar(0)) || !std::isfinite(n))
      throw Error(ErrorKind::validation, p + "n", p + "n must be finite and non-negative");
    unit(d, "d");
    positive(u, "u");
    positive(s, "s");
    positive(h, "h");
    unit(a, "a");
    unit(theta, "theta");
  }

  friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

/// Log-ratios for U, S, H and level differences for A and Theta.
template <typename Scalar>
ExposureVector<Scalar> exposure_offsets(const OperatingPoint<Scalar>& op,
                                        const ReferencePoint<Scalar>& ref) {
  using std::log;
  auto ratio = [](Scalar v, Scalar v0, const char* field) {
    if (!(v > Scalar(0)) || !(v0 > Scalar(0)))
      throw Error(ErrorKind::domain, field,
                  std::string(field) + " must be positive (log of a non-positive ratio)");
    return log(v / v0);
  };
  ExposureVector<Scalar> z;
  z << ratio(op.u, ref.u0, "u"), ratio(op.s, ref.s0, "s"), ratio(op.h, ref.h0, "h"),
      op.a - ref.a0, op.theta - ref.theta0;
  return z;
}

/// Linear debt amplifier 1 + beta * D. Any callable with the same signature
/// can stand in for it in evaluate().
struct LinearDebtAmplifier {
  template <typename Scalar>
  Scalar operator()(Scalar beta, Scalar debt) const {
    return Scalar(1) + beta * debt;
  }
};

template <typename Scalar>
Scalar phi(Scalar beta, Scalar debt) {
  return LinearDebtAmplifier{}(beta, debt);
}

template <typename Scalar>
Scalar psi(const CategoryParams<Scalar>& p, const OperatingPoint<Scalar>& op,
           const ReferencePoint<Scalar>& ref) {
  using std::exp;
  return exp(p.gamma().dot(exposure_offsets(op, ref)));
}

template <typename Scalar>
CategoryVector<Scalar> psi(const CategoryTable<Scalar>& table, const OperatingPoint<Scalar>& op,
                           const ReferencePoint<Scalar>& ref) {
  return (table.gamma * exposure_offsets(op, ref)).array().exp().matrix();
}

template <typename Scalar>
Scalar category_cost(const CategoryParams<Scalar>& p, const OperatingPoint<Scalar>& op,
                     const ReferencePoint<Scalar>& ref) {
  return (p.fixed + p.variable * op.n) * phi(p.beta, op.d) * psi(p, op, ref);
}

template <typename Scalar>
struct TaxReport {
  CategoryVector<Scalar> cost = CategoryVector<Scalar>::Zero();
  CategoryVector<Scalar> debt_factor = CategoryVector<Scalar>::Ones();      // Phi_k
  CategoryVector<Scalar> exposure_factor = CategoryVector<Scalar>::Ones();  // Psi_k
  Scalar total{0};
  Scalar baseline_total{0};  // total at D = 0, same exposure
  // Per-transaction figures are absent when N = 0.
  std::optional<Scalar> per_tx;
  std::optional<Scalar> baseline_per_tx;
  std::optional<Scalar> debt_per_tx;

  Scalar operator[](Category c) const { return cost(index_of(c)); }
};

namespace detail {

template <typename Scalar, typename Amplifier>
CategoryVector<Scalar> debt_factors(const CategoryVector<Scalar>& beta, Scalar debt,
                                    const Amplifier& amplify) {
  CategoryVector<Scalar> out;
  for (Eigen::Index k = 0; k < out.size(); ++k) out(k) = amplify(beta(k), debt);
  return out;
}

}  // namespace detail

/// Full evaluation at one operating point. The baseline is a second
/// evaluation at D = 0 rather than an algebraic shortcut, so it stays
/// correct for any amplifier.
template <typename Scalar, typename Amplifier = LinearDebtAmplifier>
TaxReport<Scalar> evaluate(const CategoryTable<Scalar>& table, const OperatingPoint<Scalar>& op,
                           const ReferencePoint<Scalar>& ref, const Amplifier& amplify = {}) {
  op.validate();
  ref.validate();
  table.validate();

  TaxReport<Scalar> r;
  const CategoryVector<Scalar> floor = table.fixed + table.variable * op.n;
  r.exposure_factor = psi(table, op, ref);
  r.debt_factor = detail::debt_factors(table.beta, op.d, amplify);
  r.cost = floor.cwiseProduct(r.debt_factor).cwiseProduct(r.exposure_factor);
  r.total = r.cost.sum();

  const CategoryVector<Scalar> zero_debt = detail::debt_factors(table.beta, Scalar(0), amplify);
  r.baseline_total = floor.cwiseProduct(zero_debt).cwiseProduct(r.exposure_factor).sum();

  if (op.n > Scalar(0)) {
    r.per_tx = r.total / op.n;
    r.baseline_per_tx = r.baseline_total / op.n;
    r.debt_per_tx = *r.per_tx - *r.baseline_per_tx;
  }
  return r;
}

}  // namespace atd
