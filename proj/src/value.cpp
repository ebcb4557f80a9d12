#include "logiciot/value.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace logiciot
{

namespace
{
constexpr double k_max_exact = 9007199254740992.0;  // 2^53
}

std::string_view type_name(ValueType t) noexcept
{
  switch (t) {
    case ValueType::Null:
      return "null";
    case ValueType::Number:
      return "number";
    case ValueType::Boolean:
      return "boolean";
    case ValueType::Text:
      return "text";
  }
  return "?";
}

Value Value::number(double d)
{
  if (!std::isfinite(d)) {
    throw NonFiniteNumber("non-finite number");
  }
  Value v;
  v.v_ = d;
  return v;
}

Value Value::boolean(bool b)
{
  Value v;
  v.v_ = b;
  return v;
}

Value Value::text(std::string s)
{
  Value v;
  v.v_ = std::move(s);
  return v;
}

ValueType Value::type() const noexcept
{
  switch (v_.index()) {
    case 1:
      return ValueType::Number;
    case 2:
      return ValueType::Boolean;
    case 3:
      return ValueType::Text;
    default:
      return ValueType::Null;
  }
}

std::optional<std::int64_t> Value::as_exact_integer() const noexcept
{
  if (!is_number()) return std::nullopt;
  const double d = as_number();
  if (d != std::trunc(d) || std::fabs(d) > k_max_exact) return std::nullopt;
  return static_cast<std::int64_t>(d);
}

std::string Value::to_display() const
{
  switch (type()) {
    case ValueType::Null:
      return "null";
    case ValueType::Number:
      return format_number(as_number());
    case ValueType::Boolean:
      return as_boolean() ? "true" : "false";
    case ValueType::Text:
      return as_text();
  }
  return {};
}

std::string format_number(double d)
{
  if (d == 0.0) return "0";  // folds -0
  // Fixed notation always fits: 309 integer digits plus ~770 fractional ones.
  std::array<char, 1100> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d, std::chars_format::fixed);
  if (ec != std::errc{}) {
    throw std::logic_error("number formatting overflow");
  }
  return std::string(buf.data(), end);
}

Value parse_query_value(std::string_view raw)
{
  if (raw == "true") return Value::boolean(true);
  if (raw == "false") return Value::boolean(false);
  if (!raw.empty()) {
    double d = 0;
    const char * first = raw.data();
    const char * last = raw.data() + raw.size();
    // from_chars accepts "inf"/"nan" spellings; only digit-led forms count as numeric.
    const char lead = raw.front() == '-' && raw.size() > 1 ? raw[1] : raw.front();
    if (lead >= '0' && lead <= '9') {
      auto [ptr, ec] = std::from_chars(first, last, d);
      if (ec == std::errc{} && ptr == last && std::isfinite(d)) {
        return Value::number(d);
      }
    }
  }
  return Value::text(std::string(raw));
}

}  // namespace logiciot
