#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ods {

/// Keys a record did not recognise, kept verbatim so a document survives a
/// parse/serialize cycle. Ordered by key, which fixes their output order.
using Extensions = std::map<std::string, nlohmann::json>;

enum class ContributorRole { Author, Maintainer, Publisher, Wrangler, Contributor };
enum class ResourceFormat { Csv, Tsv, Json, Jsonl, Other };
enum class FieldType { String, Integer, Number, Boolean, Date, Datetime, Time, Object, Array, Any };
enum class UpdateMethod { Incremental, FullRefresh, Other };
enum class UseCaseKind { Permitted, Prohibited };

std::string_view to_string(ContributorRole v) noexcept;
std::string_view to_string(ResourceFormat v) noexcept;
std::string_view to_string(FieldType v) noexcept;
std::string_view to_string(UpdateMethod v) noexcept;
std::string_view to_string(UseCaseKind v) noexcept;

std::optional<ContributorRole> contributor_role_from(std::string_view s) noexcept;
std::optional<ResourceFormat> resource_format_from(std::string_view s) noexcept;
std::optional<FieldType> field_type_from(std::string_view s) noexcept;
std::optional<UpdateMethod> update_method_from(std::string_view s) noexcept;
std::optional<UseCaseKind> use_case_kind_from(std::string_view s) noexcept;

struct License {
    std::optional<std::string> name;
    std::optional<std::string> title;
    std::optional<std::string> path;
    Extensions extra;
    bool operator==(const License&) const = default;
};

struct Contributor {
    std::string name;
    ContributorRole role = ContributorRole::Contributor;
    std::optional<std::string> organization;
    std::optional<std::string> email;
    std::optional<std::string> path;
    Extensions extra;
    bool operator==(const Contributor&) const = default;
};

struct Source {
    std::string title;
    std::optional<std::string> path;
    std::optional<std::string> description;
    Extensions extra;
    bool operator==(const Source&) const = default;
};

struct Field {
    std::string name;
    FieldType type = FieldType::String;
    std::optional<std::string> description;
    std::vector<std::string> sampleValues;
    Extensions extra;
    bool operator==(const Field&) const = default;
};

struct TableSchema {
    std::vector<Field> fields;
    std::vector<std::string> missingValues;
    Extensions extra;
    bool operator==(const TableSchema&) const = default;
};

struct Resource {
    std::string name;
    std::string path;
    ResourceFormat format = ResourceFormat::Other;
    std::string mediatype;
    std::string encoding;
    std::optional<std::int64_t> bytes;
    std::optional<std::string> hash;  // "sha256:<64 hex>"
    std::optional<TableSchema> schema;
    Extensions extra;
    bool operator==(const Resource&) const = default;
};

struct SensitivityType {
    std::string name;
    std::string description;
    Extensions extra;
    bool operator==(const SensitivityType&) const = default;
};

struct Sensitivity {
    std::string description;
    std::vector<SensitivityType> types;
    Extensions extra;
    bool operator==(const Sensitivity&) const = default;
};

struct Confidentiality {
    std::optional<std::string> path;
    std::string description;
    Extensions extra;
    bool operator==(const Confidentiality&) const = default;
};

struct PrivacyEntry {
    Sensitivity sensitivity;
    Confidentiality confidentiality;
    Extensions extra;
    bool operator==(const PrivacyEntry&) const = default;
};

struct UseTerms {
    std::string description;
    std::optional<std::string> path;
    std::vector<std::string> restrictions;
    Extensions extra;
    bool operator==(const UseTerms&) const = default;
};

struct DataAccess {
    std::optional<bool> anonymousAccess;
    std::optional<bool> registrationRequired;
    std::string description;
    std::optional<std::string> path;
    Extensions extra;
    bool operator==(const DataAccess&) const = default;
};

struct Method {
    std::string name;
    std::string description;
    std::optional<std::string> path;
    Extensions extra;
    bool operator==(const Method&) const = default;
};

struct ConsentRecord {
    std::string title;
    std::string description;
    std::optional<std::string> path;
    Extensions extra;
    bool operator==(const ConsentRecord&) const = default;
};

struct CollectionProcedure {
    std::string description;
    std::optional<std::string> path;
    std::vector<Contributor> contributors;
    std::vector<Method> methods;
    std::vector<ConsentRecord> consent;
    Extensions extra;
    bool operator==(const CollectionProcedure&) const = default;
};

struct ProcessingProcedure {
    std::string description;
    std::vector<Method> methods;
    std::vector<Contributor> contributors;
    Extensions extra;
    bool operator==(const ProcessingProcedure&) const = default;
};

struct UpdateProcedure {
    std::optional<bool> isUpdated;
    std::optional<std::string> periodicity;
    std::optional<UpdateMethod> method;
    std::optional<std::string> methodDescription;
    std::optional<std::string> versioning;
    std::vector<Contributor> contributors;
    Extensions extra;
    bool operator==(const UpdateProcedure&) const = default;
};

struct Procedures {
    std::vector<CollectionProcedure> collection;
    std::vector<ProcessingProcedure> processing;
    std::optional<UpdateProcedure> update;
    Extensions extra;
    bool operator==(const Procedures&) const = default;
};

struct UseCase {
    std::string title;
    std::string description;
    UseCaseKind kind = UseCaseKind::Permitted;
    Extensions extra;
    bool operator==(const UseCase&) const = default;
};

/// Root document: Datapackage metadata plus the responsible-AI block, both at
/// the top level.
struct Datasheet {
    std::string name;
    std::string title;
    std::string description;
    std::string version;
    std::optional<std::string> created;  // YYYY-MM-DD
    std::optional<std::string> homepage;
    std::vector<std::string> keywords;
    std::vector<License> licenses;
    std::vector<Contributor> contributors;
    std::vector<Source> sources;
    std::vector<Resource> resources;
    std::vector<PrivacyEntry> privacy;
    std::optional<UseTerms> useTerms;
    std::optional<DataAccess> dataAccess;
    std::optional<Procedures> procedures;
    std::vector<UseCase> useCases;
    Extensions extra;
    bool operator==(const Datasheet&) const = default;
};

// Value predicates shared by validation, inference and the template builder.
bool is_slug(std::string_view s) noexcept;
bool is_iso_date(std::string_view s) noexcept;
bool is_sha256_ref(std::string_view s) noexcept;

/// Today's date in UTC as YYYY-MM-DD.
std::string today_iso_date();

/// Draft datasheet: every RAI section present but empty, version "0.1.0".
/// Throws InvalidArgument (code "name-not-slug") for a bad name.
Datasheet new_template(std::string_view name, std::string_view title);
Datasheet new_template(std::string_view name, std::string_view title, std::string created);

/// Folds freshly inferred resources into `sheet`. Same-named resources take the
/// inferred structure but keep human-authored descriptions and extension keys;
/// new names are appended in input order.
Datasheet merge_inferred(Datasheet sheet, std::span<const Resource> inferred);

}  // namespace ods
