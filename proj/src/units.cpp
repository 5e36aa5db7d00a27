#include "hasel/units.hpp"

#include <charconv>
#include <string>

#include "hasel/error.hpp"

namespace hasel {

namespace {

struct UnitEntry {
  const char* symbol;
  Dimension dimension;
  double factor;
};

constexpr UnitEntry kUnits[] = {
    {"m", Dimension::length, 1.0},
    {"cm", Dimension::length, 1e-2},
    {"mm", Dimension::length, 1e-3},
    {"um", Dimension::length, 1e-6},
    {"µm", Dimension::length, 1e-6},
    {"V", Dimension::voltage, 1.0},
    {"kV", Dimension::voltage, 1e3},
    {"rad", Dimension::angle, 1.0},
    {"deg", Dimension::angle, pi / 180.0},
    {"kg", Dimension::mass, 1.0},
    {"g", Dimension::mass, 1e-3},
    {"N", Dimension::force, 1.0},
    {"mN", Dimension::force, 1e-3},
    {"N*m", Dimension::torque, 1.0},
    {"Nm", Dimension::torque, 1.0},
    {"mN*m", Dimension::torque, 1e-3},
    {"mNm", Dimension::torque, 1e-3},
    {"s", Dimension::duration, 1.0},
    {"ms", Dimension::duration, 1e-3},
    {"m/s", Dimension::speed, 1.0},
    {"mm/s", Dimension::speed, 1e-3},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::length: return "length";
    case Dimension::voltage: return "voltage";
    case Dimension::angle: return "angle";
    case Dimension::mass: return "mass";
    case Dimension::force: return "force";
    case Dimension::torque: return "torque";
    case Dimension::duration: return "time";
    case Dimension::speed: return "speed";
    case Dimension::dimensionless: return "dimensionless";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension expected) {
  const std::string_view trimmed = trim(text);
  if (trimmed.empty())
    fail(ErrorCode::bad_quantity, "empty quantity");

  double value = 0.0;
  const char* begin = trimmed.data();
  const char* end = trimmed.data() + trimmed.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin)
    fail(ErrorCode::bad_quantity,
         "cannot parse number in quantity '" + std::string(trimmed) + "'");

  const std::string_view unit = trim(std::string_view(ptr, end - ptr));
  if (unit.empty()) {
    if (expected == Dimension::dimensionless) return value;
    fail(ErrorCode::bad_quantity,
         "quantity '" + std::string(trimmed) + "' needs an explicit " +
             dimension_name(expected) + " unit suffix");
  }
  if (expected == Dimension::dimensionless)
    fail(ErrorCode::bad_quantity,
         "dimensionless value '" + std::string(trimmed) + "' must be a bare number");

  for (const UnitEntry& entry : kUnits) {
    if (unit == entry.symbol) {
      if (entry.dimension != expected)
        fail(ErrorCode::bad_quantity,
             "unit '" + std::string(unit) + "' is not a " +
                 dimension_name(expected) + " unit");
      return value * entry.factor;
    }
  }
  fail(ErrorCode::bad_quantity, "unknown unit '" + std::string(unit) + "'");
}

}  // namespace hasel
