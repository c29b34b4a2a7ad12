#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ods/model.hpp"

namespace ods {

/// Parses strict JSON: no comments, duplicate keys rejected. Syntax errors carry
/// line and column.
nlohmann::json parse_json_strict(std::string_view text);

/// Typed datasheet from JSON text. Throws ParseError citing a JSON Pointer.
Datasheet parse_datasheet(std::string_view json_text);
Datasheet datasheet_from_json(const nlohmann::json& doc);

/// Canonical JSON value with keys in schema order, unknown keys last.
nlohmann::ordered_json to_ordered_json(const Datasheet& sheet);
nlohmann::ordered_json to_ordered_json(const Resource& resource);
nlohmann::ordered_json to_ordered_json(const PrivacyEntry& entry);
nlohmann::ordered_json to_ordered_json(const UseTerms& terms);
nlohmann::ordered_json to_ordered_json(const DataAccess& access);
nlohmann::ordered_json to_ordered_json(const Procedures& procedures);
nlohmann::ordered_json to_ordered_json(const UseCase& use_case);
nlohmann::ordered_json to_ordered_json(const Contributor& contributor);

/// Canonical text for any ordered JSON value: UTF-8, two-space indent, LF,
/// trailing newline.
std::string canonical_text(const nlohmann::ordered_json& value);

std::string serialize_datasheet(const Datasheet& sheet);
std::string serialize_resource(const Resource& resource);
Resource parse_resource(std::string_view json_text);
Resource resource_from_json(const nlohmann::json& value, const std::string& pointer);

/// RFC 6901 escaping of a single reference token.
std::string escape_pointer_token(std::string_view token);

}  // namespace ods
