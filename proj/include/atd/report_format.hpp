#pragma once

#include <string>
#include <string_view>

namespace atd {

// Display rounding used by every table: whole currency units for totals,
// cents for per-transaction values, whole percent for changes.
double round_total(double x);
double round_per_tx(double x);
double round_percent(double fraction);  // 0.2389 -> 24

/// Shortest decimal text that reads back to the same double. Used for every
/// full-precision number written to files so output is byte-stable.
std::string format_number(double x);

/// "10,799" / "1.08" style for console tables.
std::string format_grouped(double x, int decimals);

/// Strict full-string parse; returns false on trailing garbage or overflow.
bool parse_number(std::string_view text, double& out);

}  // namespace atd
