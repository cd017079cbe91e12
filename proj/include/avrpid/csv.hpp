#pragma once

#include <string>

namespace avrpid {

/// RFC-4180 field quoting: wraps when the value contains a comma, quote or
/// newline, doubling embedded quotes.
std::string csv_field(const std::string& raw);

std::string format_full(double v);  // %.17g, round-trips exactly
std::string format_sig(double v);   // %.6g display precision

}  // namespace avrpid
