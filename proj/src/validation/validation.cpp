#include "ods/validation.hpp"

#include <algorithm>
#include <set>

#include "ods/codec.hpp"

namespace ods {

std::string_view to_string(Severity s) noexcept {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "error";
}

namespace {

bool filled(const std::string& s) { return !s.empty(); }
bool filled(const std::optional<std::string>& s) { return s && !s->empty(); }

template <typename Range, typename Pred>
bool any(const Range& r, Pred p) {
    return std::any_of(std::begin(r), std::end(r), p);
}

SectionScore privacy_score(const Datasheet& d) {
    const auto& p = d.privacy;
    SectionScore s{0, 4};
    s.populated += any(p, [](const PrivacyEntry& e) { return filled(e.sensitivity.description); });
    s.populated += any(p, [](const PrivacyEntry& e) { return !e.sensitivity.types.empty(); });
    s.populated += any(p, [](const PrivacyEntry& e) { return filled(e.confidentiality.description); });
    s.populated += any(p, [](const PrivacyEntry& e) { return filled(e.confidentiality.path); });
    return s;
}

SectionScore use_terms_score(const Datasheet& d) {
    SectionScore s{0, 2};
    if (d.useTerms) s.populated = filled(d.useTerms->description) + !d.useTerms->restrictions.empty();
    return s;
}

SectionScore data_access_score(const Datasheet& d) {
    SectionScore s{0, 3};
    if (const auto& a = d.dataAccess) {
        s.populated = filled(a->description) + a->anonymousAccess.has_value() + a->registrationRequired.has_value();
    }
    return s;
}

SectionScore collection_score(const Datasheet& d) {
    SectionScore s{0, 4};
    if (!d.procedures) return s;
    const auto& c = d.procedures->collection;
    s.populated += any(c, [](const CollectionProcedure& p) { return filled(p.description); });
    s.populated += any(c, [](const CollectionProcedure& p) { return !p.methods.empty(); });
    s.populated += any(c, [](const CollectionProcedure& p) { return !p.consent.empty(); });
    s.populated += any(c, [](const CollectionProcedure& p) { return !p.contributors.empty(); });
    return s;
}

SectionScore processing_score(const Datasheet& d) {
    SectionScore s{0, 3};
    if (!d.procedures) return s;
    const auto& c = d.procedures->processing;
    s.populated += any(c, [](const ProcessingProcedure& p) { return filled(p.description); });
    s.populated += any(c, [](const ProcessingProcedure& p) { return !p.methods.empty(); });
    s.populated += any(c, [](const ProcessingProcedure& p) { return !p.contributors.empty(); });
    return s;
}

// A static dataset (isUpdated == false) is complete with the flag alone.
SectionScore update_score(const Datasheet& d) {
    if (!d.procedures || !d.procedures->update) return {0, 4};
    const auto& u = *d.procedures->update;
    if (u.isUpdated == false) return {1, 1};
    return {u.isUpdated.has_value() + filled(u.periodicity) + u.method.has_value() + filled(u.versioning), 4};
}

SectionScore use_cases_score(const Datasheet& d) {
    SectionScore s{0, 2};
    s.populated += any(d.useCases, [](const UseCase& u) { return u.kind == UseCaseKind::Permitted; });
    s.populated += any(d.useCases, [](const UseCase& u) { return u.kind == UseCaseKind::Prohibited; });
    return s;
}

std::string section_pointer(std::string_view section) {
    if (section == "collection" || section == "processing" || section == "update") {
        return "/procedures/" + std::string(section);
    }
    return "/" + std::string(section);
}

class Checker {
public:
    void add(std::string pointer, Severity severity, std::string_view code, std::string message) {
        issues_.push_back(Issue{std::move(pointer), severity, std::string(code), std::move(message)});
    }
    void error(std::string pointer, std::string_view code, std::string message) {
        add(std::move(pointer), Severity::Error, code, std::move(message));
    }

    void contributors(const std::vector<Contributor>& list, const std::string& base) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i].name.empty()) {
                error(base + "/" + std::to_string(i) + "/name", "empty-contributor-name", "contributor name is empty");
            }
        }
    }

    void resource(const Resource& r, const std::string& base) {
        if (!is_slug(r.name)) {
            error(base + "/name", "resource-name-not-slug", "resource name \"" + r.name + "\" is not a valid slug");
        }
        if (r.bytes && *r.bytes < 0) error(base + "/bytes", "negative-bytes", "bytes must not be negative");
        if (r.hash && !is_sha256_ref(*r.hash)) {
            error(base + "/hash", "invalid-hash", "hash must look like sha256:<64 lowercase hex digits>");
        }
        if (!r.schema) return;
        const auto& schema = *r.schema;
        const std::string sbase = base + "/schema";
        if (schema.fields.empty()) error(sbase + "/fields", "empty-schema", "schema has no fields");
        std::set<std::string_view> names;
        for (std::size_t i = 0; i < schema.fields.size(); ++i) {
            const Field& f = schema.fields[i];
            const std::string fbase = sbase + "/fields/" + std::to_string(i);
            if (!names.insert(f.name).second) {
                error(fbase + "/name", "duplicate-field-name", "field name \"" + f.name + "\" is repeated");
            }
            if (f.sampleValues.size() > 5) {
                error(fbase + "/sampleValues", "too-many-sample-values", "at most 5 sample values are allowed");
            }
            for (std::size_t k = 0; k < f.sampleValues.size(); ++k) {
                const auto& v = f.sampleValues[k];
                if (std::find(schema.missingValues.begin(), schema.missingValues.end(), v) != schema.missingValues.end()) {
                    error(fbase + "/sampleValues/" + std::to_string(k), "sample-value-is-missing",
                          "sample value \"" + v + "\" is declared as a missing value");
                }
            }
        }
    }

    std::vector<Issue> take() { return std::move(issues_); }

private:
    std::vector<Issue> issues_;
};

using ScoreFn = SectionScore (*)(const Datasheet&);

ScoreFn scorer(std::string_view section) {
    if (section == "privacy") return privacy_score;
    if (section == "useTerms") return use_terms_score;
    if (section == "dataAccess") return data_access_score;
    if (section == "collection") return collection_score;
    if (section == "processing") return processing_score;
    if (section == "update") return update_score;
    if (section == "useCases") return use_cases_score;
    return nullptr;
}

}  // namespace

SectionScore score_section(const Datasheet& sheet, std::string_view section) {
    const ScoreFn fn = scorer(section);
    return fn ? fn(sheet) : SectionScore{};
}

Completeness completeness_score(const Datasheet& sheet) {
    Completeness out;
    for (auto section : kRaiSections) out.emplace(section, score_section(sheet, section).fraction());
    return out;
}

ValidationReport validate_datasheet(const Datasheet& d) {
    Checker c;
    if (!is_slug(d.name)) {
        c.error("/name", "name-not-slug",
                "name \"" + d.name + "\" must be a lowercase slug (letters, digits, '.', '_', '-')");
    }
    if (d.created && !is_iso_date(*d.created)) {
        c.error("/created", "invalid-date", "created must be a calendar date in YYYY-MM-DD form");
    }
    for (std::size_t i = 0; i < d.licenses.size(); ++i) {
        if (!d.licenses[i].name && !d.licenses[i].path) {
            c.error("/licenses/" + std::to_string(i), "license-without-name-or-path",
                    "a license needs a name or a path");
        }
    }
    c.contributors(d.contributors, "/contributors");
    for (std::size_t i = 0; i < d.sources.size(); ++i) {
        if (d.sources[i].title.empty()) {
            c.error("/sources/" + std::to_string(i) + "/title", "empty-source-title", "source title is empty");
        }
    }

    if (d.resources.empty()) c.error("/resources", "empty-resources", "a datasheet must list at least one resource");
    std::set<std::string_view> resource_names;
    for (std::size_t i = 0; i < d.resources.size(); ++i) {
        const std::string base = "/resources/" + std::to_string(i);
        if (!resource_names.insert(d.resources[i].name).second) {
            c.error(base + "/name", "duplicate-resource-name",
                    "resource name \"" + d.resources[i].name + "\" is used more than once");
        }
        c.resource(d.resources[i], base);
    }

    for (std::size_t i = 0; i < d.privacy.size(); ++i) {
        const auto& types = d.privacy[i].sensitivity.types;
        for (std::size_t k = 0; k < types.size(); ++k) {
            if (types[k].name.empty()) {
                c.error("/privacy/" + std::to_string(i) + "/sensitivity/types/" + std::to_string(k) + "/name",
                        "empty-sensitivity-type-name", "sensitivity type name is empty");
            }
        }
    }
    // A record with nothing in it is an unfilled section, reported as a warning below.
    if (d.useTerms && d.useTerms->description.empty() && *d.useTerms != UseTerms{}) {
        c.error("/useTerms/description", "empty-use-terms-description", "use terms need a description");
    }
    if (d.dataAccess && d.dataAccess->anonymousAccess == true && d.dataAccess->registrationRequired == true) {
        c.error("/dataAccess", "access-contradiction",
                "anonymousAccess and registrationRequired cannot both be true");
    }
    if (d.procedures) {
        const auto& p = *d.procedures;
        for (std::size_t i = 0; i < p.collection.size(); ++i) {
            const std::string base = "/procedures/collection/" + std::to_string(i);
            if (p.collection[i].description.empty()) {
                c.error(base + "/description", "empty-procedure-description", "collection procedure needs a description");
            }
            c.contributors(p.collection[i].contributors, base + "/contributors");
        }
        for (std::size_t i = 0; i < p.processing.size(); ++i) {
            const std::string base = "/procedures/processing/" + std::to_string(i);
            if (p.processing[i].description.empty()) {
                c.error(base + "/description", "empty-procedure-description", "processing procedure needs a description");
            }
            c.contributors(p.processing[i].contributors, base + "/contributors");
        }
        if (p.update) {
            const auto& u = *p.update;
            if (u.isUpdated == false && (u.periodicity || u.method || u.versioning)) {
                c.error("/procedures/update", "update-fields-when-static",
                        "a static dataset (isUpdated false) must not declare periodicity, method or versioning");
            }
            c.contributors(u.contributors, "/procedures/update/contributors");
        }
    }
    for (std::size_t i = 0; i < d.useCases.size(); ++i) {
        if (d.useCases[i].title.empty()) {
            c.error("/useCases/" + std::to_string(i) + "/title", "empty-use-case-title", "use case title is empty");
        }
    }

    ValidationReport report;
    double sum = 0.0;
    for (auto section : kRaiSections) {
        const SectionScore s = score_section(d, section);
        const double f = s.fraction();
        report.completeness.emplace(section, f);
        sum += f;
        if (s.populated == 0) {
            c.add(section_pointer(section), Severity::Warning, "empty-rai-section",
                  "the " + std::string(section) + " section is empty");
        } else if (s.populated < s.total) {
            c.add(section_pointer(section), Severity::Info, "incomplete-rai-section",
                  "the " + std::string(section) + " section has " + std::to_string(s.populated) + " of " +
                      std::to_string(s.total) + " recommended fields");
        }
    }
    report.overall = sum / static_cast<double>(kRaiSections.size());

    report.issues = c.take();
    std::stable_sort(report.issues.begin(), report.issues.end(), [](const Issue& a, const Issue& b) {
        if (a.pointer != b.pointer) return a.pointer < b.pointer;
        return a.code < b.code;
    });
    report.valid = std::none_of(report.issues.begin(), report.issues.end(),
                                [](const Issue& i) { return i.severity == Severity::Error; });
    return report;
}

nlohmann::ordered_json to_ordered_json(const ValidationReport& report) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["valid"] = report.valid;
    out["overall"] = report.overall;
    nlohmann::ordered_json completeness = nlohmann::ordered_json::object();
    for (auto section : kRaiSections) {
        auto it = report.completeness.find(section);
        completeness[std::string(section)] = it == report.completeness.end() ? 0.0 : it->second;
    }
    out["completeness"] = std::move(completeness);
    nlohmann::ordered_json issues = nlohmann::ordered_json::array();
    for (const auto& i : report.issues) {
        nlohmann::ordered_json item = nlohmann::ordered_json::object();
        item["pointer"] = i.pointer;
        item["severity"] = to_string(i.severity);
        item["code"] = i.code;
        item["message"] = i.message;
        issues.push_back(std::move(item));
    }
    out["issues"] = std::move(issues);
    return out;
}

std::string serialize_report(const ValidationReport& report) { return canonical_text(to_ordered_json(report)); }

}  // namespace ods
