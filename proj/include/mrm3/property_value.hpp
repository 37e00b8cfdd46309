#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace mrm3 {

using Scalar = std::variant<std::string, double, std::int64_t, bool>;
using ScalarList = std::vector<Scalar>;

// Value stored on nodes and relationships. Lists hold scalars only, and
// numbers must be finite before they reach a graph.
class PropertyValue {
public:
  using Storage = std::variant<std::monostate, std::string, double, std::int64_t, bool, ScalarList>;

  PropertyValue() = default;
  PropertyValue(std::monostate) {}
  PropertyValue(std::string text) : v_(std::move(text)) {}
  PropertyValue(const char *text) : v_(std::string(text)) {}
  PropertyValue(double number) : v_(number) {}
  PropertyValue(std::int64_t integer) : v_(integer) {}
  PropertyValue(int integer) : v_(static_cast<std::int64_t>(integer)) {}
  PropertyValue(bool flag) : v_(flag) {}
  PropertyValue(ScalarList list) : v_(std::move(list)) {}
  PropertyValue(const Scalar &scalar);

  bool is_null() const noexcept { return std::holds_alternative<std::monostate>(v_); }
  bool is_text() const noexcept { return std::holds_alternative<std::string>(v_); }
  bool is_float() const noexcept { return std::holds_alternative<double>(v_); }
  bool is_integer() const noexcept { return std::holds_alternative<std::int64_t>(v_); }
  bool is_number() const noexcept { return is_float() || is_integer(); }
  bool is_bool() const noexcept { return std::holds_alternative<bool>(v_); }
  bool is_list() const noexcept { return std::holds_alternative<ScalarList>(v_); }

  const std::string &text() const { return std::get<std::string>(v_); }
  double number() const { return is_integer() ? static_cast<double>(std::get<std::int64_t>(v_)) : std::get<double>(v_); }
  std::int64_t integer() const { return std::get<std::int64_t>(v_); }
  bool boolean() const { return std::get<bool>(v_); }
  const ScalarList &list() const { return std::get<ScalarList>(v_); }

  const Storage &storage() const noexcept { return v_; }

  // No NaN or infinity anywhere in the value.
  bool is_finite() const noexcept;

  bool operator==(const PropertyValue &) const = default;

private:
  Storage v_;
};

using PropertyMap = std::map<std::string, PropertyValue>;

// Shortest decimal that round-trips; always carries a '.' or exponent so
// that it reads back as a float.
std::string format_double(double value);

// Plain text rendering used in tables and CSV: strings unquoted, null empty.
std::string display_string(const PropertyValue &value);

// Literal rendering for query text and Cypher scripts: strings single-quoted
// with backslash escapes.
std::string cypher_literal(const PropertyValue &value);
std::string cypher_string(const std::string &text);

nlohmann::json to_json(const PropertyValue &value);
nlohmann::json to_json(const PropertyMap &map);
// Throws mrm3::Error for nested arrays, objects, or arrays containing null.
PropertyValue property_from_json(const nlohmann::json &value);
PropertyMap property_map_from_json(const nlohmann::json &object);

} // namespace mrm3
