#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ods/model.hpp"

namespace ods {

enum class Severity { Error, Warning, Info };
std::string_view to_string(Severity s) noexcept;

/// One located diagnostic.
struct Issue {
    std::string pointer;  // JSON Pointer into the datasheet
    Severity severity = Severity::Error;
    std::string code;     // one of kIssueCodes
    std::string message;
    bool operator==(const Issue&) const = default;
};

/// Every code an Issue can carry. The last five describe parse failures, which
/// the service reports as issues alongside its error body.
inline constexpr std::array<std::string_view, 27> kIssueCodes{
    "name-not-slug",
    "invalid-date",
    "empty-resources",
    "duplicate-resource-name",
    "resource-name-not-slug",
    "negative-bytes",
    "invalid-hash",
    "empty-schema",
    "duplicate-field-name",
    "too-many-sample-values",
    "sample-value-is-missing",
    "license-without-name-or-path",
    "empty-contributor-name",
    "empty-source-title",
    "empty-sensitivity-type-name",
    "empty-use-terms-description",
    "access-contradiction",
    "empty-procedure-description",
    "update-fields-when-static",
    "empty-use-case-title",
    "empty-rai-section",
    "incomplete-rai-section",
    "syntax-error",
    "duplicate-key",
    "missing-key",
    "wrong-kind",
    "invalid-value",
};

/// RAI sections scored for completeness, in report order.
inline constexpr std::array<std::string_view, 7> kRaiSections{
    "privacy", "useTerms", "dataAccess", "collection", "processing", "update", "useCases",
};

/// Populated / total recommended fields for one section.
struct SectionScore {
    int populated = 0;
    int total = 0;
    double fraction() const noexcept { return total == 0 ? 0.0 : static_cast<double>(populated) / total; }
};

/// Section name -> fraction in [0, 1], one entry per kRaiSections member.
using Completeness = std::map<std::string, double, std::less<>>;

struct ValidationReport {
    std::vector<Issue> issues;  // sorted by pointer, then code
    Completeness completeness;
    double overall = 0.0;       // mean of the section scores
    bool valid = true;          // no Error-severity issue
};

SectionScore score_section(const Datasheet& sheet, std::string_view section);
Completeness completeness_score(const Datasheet& sheet);

ValidationReport validate_datasheet(const Datasheet& sheet);

/// Field order: valid, overall, completeness, issues.
nlohmann::ordered_json to_ordered_json(const ValidationReport& report);
std::string serialize_report(const ValidationReport& report);

}  // namespace ods
