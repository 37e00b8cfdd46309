#include "mrm3/property_value.hpp"

#include <charconv>
#include <cmath>

#include "mrm3/error.hpp"

namespace mrm3 {

namespace {

PropertyValue::Storage widen(const Scalar &scalar) {
  return std::visit([](const auto &v) -> PropertyValue::Storage { return v; }, scalar);
}

bool finite_scalar(const Scalar &scalar) {
  if (const auto *d = std::get_if<double>(&scalar))
    return std::isfinite(*d);
  return true;
}

std::string scalar_display(const Scalar &scalar) { return display_string(PropertyValue(scalar)); }

nlohmann::json scalar_json(const Scalar &scalar) { return to_json(PropertyValue(scalar)); }

Scalar scalar_from_json(const nlohmann::json &value) {
  switch (value.type()) {
  case nlohmann::json::value_t::string: return value.get<std::string>();
  case nlohmann::json::value_t::boolean: return value.get<bool>();
  case nlohmann::json::value_t::number_integer: return value.get<std::int64_t>();
  case nlohmann::json::value_t::number_unsigned: {
    auto u = value.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX))
      throw Error("integer out of 64-bit signed range");
    return static_cast<std::int64_t>(u);
  }
  case nlohmann::json::value_t::number_float: return value.get<double>();
  default: throw Error("list elements must be scalars");
  }
}

} // namespace

PropertyValue::PropertyValue(const Scalar &scalar) : v_(widen(scalar)) {}

bool PropertyValue::is_finite() const noexcept {
  if (is_float())
    return std::isfinite(std::get<double>(v_));
  if (is_list()) {
    for (const auto &s : list())
      if (!finite_scalar(s))
        return false;
  }
  return true;
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, end);
  if (out.find_first_of(".eEn") == std::string::npos)
    out += ".0";
  return out;
}

std::string display_string(const PropertyValue &value) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string &s) const { return s; }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const ScalarList &list) const {
      std::string out = "[";
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i)
          out += ", ";
        out += scalar_display(list[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, value.storage());
}

std::string cypher_string(const std::string &text) {
  std::string out = "'";
  for (char c : text) {
    switch (c) {
    case '\\': out += "\\\\"; break;
    case '\'': out += "\\'"; break;
    case '\n': out += "\\n"; break;
    case '\r': out += "\\r"; break;
    case '\t': out += "\\t"; break;
    default: out += c;
    }
  }
  return out + "'";
}

std::string cypher_literal(const PropertyValue &value) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(const std::string &s) const { return cypher_string(s); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const ScalarList &list) const {
      std::string out = "[";
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i)
          out += ", ";
        out += cypher_literal(PropertyValue(list[i]));
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, value.storage());
}

nlohmann::json to_json(const PropertyValue &value) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(const std::string &s) const { return s; }
    nlohmann::json operator()(double d) const { return d; }
    nlohmann::json operator()(std::int64_t i) const { return i; }
    nlohmann::json operator()(bool b) const { return b; }
    nlohmann::json operator()(const ScalarList &list) const {
      auto arr = nlohmann::json::array();
      for (const auto &s : list)
        arr.push_back(scalar_json(s));
      return arr;
    }
  };
  return std::visit(Visitor{}, value.storage());
}

nlohmann::json to_json(const PropertyMap &map) {
  auto obj = nlohmann::json::object();
  for (const auto &[k, v] : map)
    obj[k] = to_json(v);
  return obj;
}

PropertyValue property_from_json(const nlohmann::json &value) {
  if (value.is_null())
    return {};
  if (value.is_array()) {
    ScalarList list;
    list.reserve(value.size());
    for (const auto &e : value)
      list.push_back(scalar_from_json(e));
    return list;
  }
  if (value.is_object())
    throw Error("property values cannot be objects");
  return PropertyValue(scalar_from_json(value));
}

PropertyMap property_map_from_json(const nlohmann::json &object) {
  if (!object.is_object())
    throw Error("property map must be a JSON object");
  PropertyMap map;
  for (const auto &[k, v] : object.items())
    map.emplace(k, property_from_json(v));
  return map;
}

} // namespace mrm3
