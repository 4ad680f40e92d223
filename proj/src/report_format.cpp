#include "atd/report_format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include <fmt/format.h>

namespace atd {

double round_total(double x) { return std::round(x); }

double round_per_tx(double x) { return std::round(x * 100.0) / 100.0; }

double round_percent(double fraction) { return std::round(fraction * 100.0); }

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  return fmt::format("{}", x);
}

std::string format_grouped(double x, int decimals) {
  std::string digits = fmt::format("{:.{}f}", std::fabs(x), decimals);
  const auto dot = digits.find('.');
  std::string whole = digits.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : digits.substr(dot);
  std::string grouped;
  for (std::size_t i = 0; i < whole.size(); ++i) {
    if (i > 0 && (whole.size() - i) % 3 == 0) grouped += ',';
    grouped += whole[i];
  }
  const bool negative = x < 0.0 && std::stod(digits) != 0.0;
  return (negative ? "-" : "") + grouped + frac;
}

bool parse_number(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace atd
