#pragma once

#include <string>
#include <string_view>

#include "magnoise/core.hpp"

namespace magnoise {

enum class Dimension { length, frequency, temperature, magnetic_field, dimensionless };
const char* to_string(Dimension d);

class UnitError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A number together with the unit it was written in; si() applies the scale.
// Keeping the original spelling makes echo -> parse round trips exact.
struct Quantity {
  double value = 0;
  std::string unit;  // empty: SI base unit, no suffix written
  double scale = 1;

  double si() const { return value * scale; }
  std::string str() const;
};

// Accepts a bare number (SI) or a number followed by a suffix valid for `dim`:
//   length nm um μm mm cm m, frequency Hz kHz MHz GHz, temperature K mK, field T.
Quantity parse_quantity(std::string_view text, Dimension dim);

// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace magnoise
