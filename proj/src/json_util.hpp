#pragma once

// Internal helpers shared by the JSON codecs.

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "smaclite/error.hpp"

namespace smaclite::detail {

using Json = nlohmann::ordered_json;

inline Json parse_document(std::string_view text, std::string_view what) {
  try {
    Json doc = Json::parse(text.begin(), text.end());
    if (!doc.is_object()) throw Error(ErrorCode::MalformedDocument, std::string(what) + " must be a JSON object");
    return doc;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string(what) + ": " + e.what());
  }
}

inline const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::MissingField, std::string("required field '") + key + "' is absent");
  return *it;
}

inline double as_number(const Json& v, const char* key) {
  if (!v.is_number()) throw Error(ErrorCode::MalformedDocument, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

inline double number_or(const Json& obj, const char* key, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, key);
}

inline long long as_integer(const Json& v, const char* key) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<long long>(d);
  }
  throw Error(ErrorCode::MalformedDocument, std::string("field '") + key + "' must be an integer");
}

inline const std::string& as_string(const Json& v, const char* key) {
  if (!v.is_string()) throw Error(ErrorCode::MalformedDocument, std::string("field '") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

inline bool as_bool(const Json& v, const char* key) {
  if (!v.is_boolean()) throw Error(ErrorCode::MalformedDocument, std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

}  // namespace smaclite::detail
