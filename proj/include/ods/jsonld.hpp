#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ods/model.hpp"

namespace ods {

/// IRI bound to the "ods" prefix; RAI blocks travel under ods:* keys.
inline constexpr std::string_view kOdsNamespace = "https://microsoft.github.io/opendatasheets/ns#";

/// The keys RAI content is embedded under, paired with the datasheet key each
/// one mirrors.
inline constexpr std::pair<std::string_view, std::string_view> kOdsKeys[] = {
    {"ods:privacy", "privacy"},
    {"ods:useTerms", "useTerms"},
    {"ods:dataAccess", "dataAccess"},
    {"ods:procedures", "procedures"},
    {"ods:useCases", "useCases"},
};

/// schema.org Dataset view of a datasheet.
struct JsonLdDocument {
    nlohmann::ordered_json body;  // starts with "@context", "@type", "identifier"

    const nlohmann::ordered_json& context() const { return body.at("@context"); }
    std::string serialize() const;
};

nlohmann::ordered_json jsonld_context();

JsonLdDocument to_jsonld(const Datasheet& sheet);

}  // namespace ods
