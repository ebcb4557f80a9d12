#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace logiciot
{

/// Raised whenever a NaN or infinity would enter a Value.
class NonFiniteNumber : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

enum class ValueType { Null, Number, Boolean, Text };

std::string_view type_name(ValueType t) noexcept;

/// Dynamically typed scalar carried by records, expressions and wire payloads.
///
/// Numbers use 64-bit float semantics; integers up to 2^53 are exact. A Value
/// never holds a non-finite number: the number constructor throws instead.
class Value
{
public:
  Value() = default;
  static Value null() { return Value{}; }
  static Value number(double d);
  static Value boolean(bool b);
  static Value text(std::string s);

  ValueType type() const noexcept;
  bool is_null() const noexcept { return std::holds_alternative<std::monostate>(v_); }
  bool is_number() const noexcept { return std::holds_alternative<double>(v_); }
  bool is_boolean() const noexcept { return std::holds_alternative<bool>(v_); }
  bool is_text() const noexcept { return std::holds_alternative<std::string>(v_); }

  double as_number() const { return std::get<double>(v_); }
  bool as_boolean() const { return std::get<bool>(v_); }
  const std::string & as_text() const { return std::get<std::string>(v_); }

  /// Exact-integer view of a number, if it has one within +/-2^53.
  std::optional<std::int64_t> as_exact_integer() const noexcept;

  /// Cross-type values are unequal; null == null.
  friend bool operator==(const Value & a, const Value & b) = default;

  /// Human-readable rendering used for query strings and diagnostics:
  /// numbers in shortest round-trip form, booleans as true/false, null as null,
  /// text verbatim.
  std::string to_display() const;

private:
  std::variant<std::monostate, double, bool, std::string> v_;
};

/// Shortest decimal form that parses back to exactly `d` (no exponent).
std::string format_number(double d);

/// Interpret a raw query-string value: fully numeric -> number,
/// "true"/"false" -> boolean, anything else -> text.
Value parse_query_value(std::string_view raw);

}  // namespace logiciot
