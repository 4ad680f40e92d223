#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atd {

enum class ErrorKind {
  invalid_input,
  domain,
  degenerate_observation,
  ill_posed,
  validation,
  parse,
  missing_category,
  io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degenerate_observation: return "degenerate_observation";
    case ErrorKind::ill_posed: return "ill_posed";
    case ErrorKind::validation: return "validation";
    case ErrorKind::parse: return "parse";
    case ErrorKind::missing_category: return "missing_category";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

/// Every error raised by the engine carries a kind and, where one applies,
/// the dotted name of the offending field (e.g. "category.evaluation.beta").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string field, const std::string& message)
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace atd
