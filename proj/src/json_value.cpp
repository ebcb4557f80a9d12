#include "logiciot/json_value.hpp"

#include <stdexcept>

namespace logiciot
{

ordered_json to_json(const Value & v)
{
  switch (v.type()) {
    case ValueType::Null:
      return nullptr;
    case ValueType::Boolean:
      return v.as_boolean();
    case ValueType::Text:
      return v.as_text();
    case ValueType::Number:
      if (auto i = v.as_exact_integer()) return *i;
      return v.as_number();
  }
  return nullptr;
}

namespace
{
template <class J>
Value convert(const J & j)
{
  if (j.is_null()) return Value::null();
  if (j.is_boolean()) return Value::boolean(j.template get<bool>());
  if (j.is_string()) return Value::text(j.template get<std::string>());
  if (j.is_number()) return Value::number(j.template get<double>());
  throw std::invalid_argument("expected a scalar JSON value, got " + std::string(j.type_name()));
}
}  // namespace

Value from_json(const nlohmann::ordered_json & j) { return convert(j); }
Value from_json(const nlohmann::json & j) { return convert(j); }

}  // namespace logiciot
