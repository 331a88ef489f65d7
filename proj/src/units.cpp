#include "magnoise/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

namespace magnoise {

const char* to_string(Dimension d) {
  switch (d) {
    case Dimension::length: return "length";
    case Dimension::frequency: return "frequency";
    case Dimension::temperature: return "temperature";
    case Dimension::magnetic_field: return "magnetic field";
    case Dimension::dimensionless: return "number";
  }
  return "?";
}

namespace {

struct Suffix {
  std::string_view name;
  double scale;
};

// longest suffixes first so "mm" wins over "m"
constexpr std::array length_units{
    Suffix{"\xC2\xB5m", 1e-6}, Suffix{"\xCE\xBCm", 1e-6}, Suffix{"nm", 1e-9},
    Suffix{"um", 1e-6},        Suffix{"mm", 1e-3},        Suffix{"cm", 1e-2},
    Suffix{"m", 1.0}};
constexpr std::array frequency_units{Suffix{"kHz", 1e3}, Suffix{"MHz", 1e6}, Suffix{"GHz", 1e9},
                                     Suffix{"Hz", 1.0}};
constexpr std::array temperature_units{Suffix{"mK", 1e-3}, Suffix{"K", 1.0}};
constexpr std::array field_units{Suffix{"T", 1.0}};

template <std::size_t N>
const Suffix* match(std::string_view s, const std::array<Suffix, N>& table) {
  for (const auto& u : table)
    if (s == u.name) return &u;
  return nullptr;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string Quantity::str() const { return format_number(value) + unit; }

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

Quantity parse_quantity(std::string_view text, Dimension dim) {
  const std::string_view s = trim(text);
  if (s.empty()) throw UnitError("empty value");
  double v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr == first)
    throw UnitError("cannot parse a number from '" + std::string(s) + "'");
  const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  Quantity q;
  q.value = v;
  if (!std::isfinite(v)) throw UnitError("non-finite value '" + std::string(s) + "'");
  if (suffix.empty()) return q;

  const Suffix* u = nullptr;
  switch (dim) {
    case Dimension::length: u = match(suffix, length_units); break;
    case Dimension::frequency: u = match(suffix, frequency_units); break;
    case Dimension::temperature: u = match(suffix, temperature_units); break;
    case Dimension::magnetic_field: u = match(suffix, field_units); break;
    case Dimension::dimensionless: break;
  }
  if (!u)
    throw UnitError("unit '" + std::string(suffix) + "' is not a valid " + to_string(dim) +
                    " unit in '" + std::string(s) + "'");
  q.unit = std::string(suffix);
  q.scale = u->scale;
  return q;
}

}  // namespace magnoise
