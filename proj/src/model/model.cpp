#include "ods/model.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <set>
#include <utility>

#include "ods/error.hpp"

namespace ods {

ParseError::ParseError(Kind kind, std::string pointer, std::string detail,
                       std::size_t line, std::size_t column)
    : Error([&] {
          std::string what = std::string(to_string(kind)) + " at \"" + pointer + "\": " + detail;
          if (line != 0) {
              what += " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
          }
          return what;
      }()),
      kind_(kind), pointer_(std::move(pointer)), detail_(std::move(detail)), line_(line), column_(column) {}

const char* to_string(ParseError::Kind kind) noexcept {
    switch (kind) {
        case ParseError::Kind::Syntax: return "syntax error";
        case ParseError::Kind::DuplicateKey: return "duplicate key";
        case ParseError::Kind::MissingKey: return "missing key";
        case ParseError::Kind::WrongKind: return "wrong value kind";
        case ParseError::Kind::InvalidValue: return "invalid value";
    }
    return "parse error";
}

namespace {

template <typename Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<ContributorRole, 5> kRoles{{
    {ContributorRole::Author, "author"},
    {ContributorRole::Maintainer, "maintainer"},
    {ContributorRole::Publisher, "publisher"},
    {ContributorRole::Wrangler, "wrangler"},
    {ContributorRole::Contributor, "contributor"},
}};

constexpr NameTable<ResourceFormat, 5> kFormats{{
    {ResourceFormat::Csv, "csv"},
    {ResourceFormat::Tsv, "tsv"},
    {ResourceFormat::Json, "json"},
    {ResourceFormat::Jsonl, "jsonl"},
    {ResourceFormat::Other, "other"},
}};

constexpr NameTable<FieldType, 10> kFieldTypes{{
    {FieldType::String, "string"},
    {FieldType::Integer, "integer"},
    {FieldType::Number, "number"},
    {FieldType::Boolean, "boolean"},
    {FieldType::Date, "date"},
    {FieldType::Datetime, "datetime"},
    {FieldType::Time, "time"},
    {FieldType::Object, "object"},
    {FieldType::Array, "array"},
    {FieldType::Any, "any"},
}};

constexpr NameTable<UpdateMethod, 3> kUpdateMethods{{
    {UpdateMethod::Incremental, "incremental"},
    {UpdateMethod::FullRefresh, "full-refresh"},
    {UpdateMethod::Other, "other"},
}};

constexpr NameTable<UseCaseKind, 2> kUseCaseKinds{{
    {UseCaseKind::Permitted, "permitted"},
    {UseCaseKind::Prohibited, "prohibited"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const NameTable<Enum, N>& table, Enum v) noexcept {
    for (const auto& [e, name] : table) {
        if (e == v) return name;
    }
    return {};
}

template <typename Enum, std::size_t N>
std::optional<Enum> value_of(const NameTable<Enum, N>& table, std::string_view s) noexcept {
    for (const auto& [e, name] : table) {
        if (name == s) return e;
    }
    return std::nullopt;
}

constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
constexpr bool is_hex_lower(char c) noexcept { return is_digit(c) || (c >= 'a' && c <= 'f'); }

}  // namespace

std::string_view to_string(ContributorRole v) noexcept { return name_of(kRoles, v); }
std::string_view to_string(ResourceFormat v) noexcept { return name_of(kFormats, v); }
std::string_view to_string(FieldType v) noexcept { return name_of(kFieldTypes, v); }
std::string_view to_string(UpdateMethod v) noexcept { return name_of(kUpdateMethods, v); }
std::string_view to_string(UseCaseKind v) noexcept { return name_of(kUseCaseKinds, v); }

std::optional<ContributorRole> contributor_role_from(std::string_view s) noexcept { return value_of(kRoles, s); }
std::optional<ResourceFormat> resource_format_from(std::string_view s) noexcept { return value_of(kFormats, s); }
std::optional<FieldType> field_type_from(std::string_view s) noexcept { return value_of(kFieldTypes, s); }
std::optional<UpdateMethod> update_method_from(std::string_view s) noexcept { return value_of(kUpdateMethods, s); }
std::optional<UseCaseKind> use_case_kind_from(std::string_view s) noexcept { return value_of(kUseCaseKinds, s); }

// ^[a-z0-9]([a-z0-9._-]*[a-z0-9])?$
bool is_slug(std::string_view s) noexcept {
    if (s.empty()) return false;
    auto alnum = [](char c) { return is_digit(c) || (c >= 'a' && c <= 'z'); };
    if (!alnum(s.front()) || !alnum(s.back())) return false;
    for (char c : s) {
        if (!alnum(c) && c != '.' && c != '_' && c != '-') return false;
    }
    return true;
}

bool is_iso_date(std::string_view s) noexcept {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (!is_digit(s[i])) return false;
    }
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (s[i] - '0');
        return v;
    };
    const std::chrono::year_month_day ymd{std::chrono::year{num(0, 4)},
                                          std::chrono::month{static_cast<unsigned>(num(5, 2))},
                                          std::chrono::day{static_cast<unsigned>(num(8, 2))}};
    return ymd.ok();
}

bool is_sha256_ref(std::string_view s) noexcept {
    constexpr std::string_view prefix = "sha256:";
    if (s.size() != prefix.size() + 64 || !s.starts_with(prefix)) return false;
    for (char c : s.substr(prefix.size())) {
        if (!is_hex_lower(c)) return false;
    }
    return true;
}

std::string today_iso_date() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02d-%02d", utc.tm_year + 1900, utc.tm_mon + 1, utc.tm_mday);
    return buf.data();
}

Datasheet new_template(std::string_view name, std::string_view title) {
    return new_template(name, title, today_iso_date());
}

Datasheet new_template(std::string_view name, std::string_view title, std::string created) {
    if (!is_slug(name)) {
        throw InvalidArgument("name-not-slug",
                              "\"" + std::string(name) + "\" is not a valid name: use lowercase letters, "
                              "digits, '.', '_' or '-', starting and ending with a letter or digit");
    }
    Datasheet sheet;
    sheet.name = std::string(name);
    sheet.title = std::string(title);
    sheet.version = "0.1.0";
    sheet.created = std::move(created);
    sheet.useTerms = UseTerms{};
    sheet.dataAccess = DataAccess{};
    sheet.procedures = Procedures{};
    sheet.procedures->update = UpdateProcedure{};
    return sheet;
}

namespace {

// Human-authored parts of a field survive re-inference.
Field merge_field(Field inferred, const Field& existing) {
    if (existing.description) inferred.description = existing.description;
    for (const auto& [key, value] : existing.extra) inferred.extra.insert_or_assign(key, value);
    return inferred;
}

Resource merge_resource(Resource inferred, const Resource& existing) {
    for (const auto& [key, value] : existing.extra) inferred.extra.insert_or_assign(key, value);
    if (inferred.schema && existing.schema) {
        for (auto& field : inferred.schema->fields) {
            for (const auto& old : existing.schema->fields) {
                if (old.name == field.name) {
                    field = merge_field(std::move(field), old);
                    break;
                }
            }
        }
        for (const auto& [key, value] : existing.schema->extra) {
            inferred.schema->extra.insert_or_assign(key, value);
        }
    }
    return inferred;
}

}  // namespace

Datasheet merge_inferred(Datasheet sheet, std::span<const Resource> inferred) {
    std::set<std::string_view> seen;
    for (const auto& r : inferred) {
        if (!seen.insert(r.name).second) {
            throw InvalidArgument("duplicate-inferred-name",
                                  "inferred resources contain the name \"" + r.name + "\" more than once");
        }
    }
    for (const auto& r : inferred) {
        bool replaced = false;
        for (auto& current : sheet.resources) {
            if (current.name == r.name) {
                current = merge_resource(r, current);
                replaced = true;
                break;
            }
        }
        if (!replaced) sheet.resources.push_back(r);
    }
    return sheet;
}

}  // namespace ods
