#include <doctest.h>

#include <algorithm>
#include <functional>

#include "files.hpp"
#include "generator.hpp"
#include "oracles.hpp"
#include "ods/codec.hpp"
#include "ods/validation.hpp"

using namespace ods;
using nlohmann::json;

namespace {

bool has_issue(const ValidationReport& r, std::string_view pointer, std::string_view code, Severity severity) {
    return std::any_of(r.issues.begin(), r.issues.end(), [&](const Issue& i) {
        return i.pointer == pointer && i.code == code && i.severity == severity;
    });
}

Datasheet minimal_valid() {
    Datasheet d = parse_datasheet(odstest::read_fixture("minimal.json"));
    return d;
}

struct Edit {
    std::string section;
    std::function<void(json&)> apply;
};

void each(json& list, const std::function<void(json&)>& fn) {
    if (!list.is_array()) return;
    for (auto& item : list) fn(item);
}

json& at_path(json& doc, std::initializer_list<const char*> keys) {
    json* node = &doc;
    for (const char* k : keys) {
        if (!node->is_object()) *node = json::object();
        node = &(*node)[k];
    }
    return *node;
}

json& object_at(json& doc, std::initializer_list<const char*> keys) {
    json& node = at_path(doc, keys);
    if (!node.is_object()) node = json::object();
    return node;
}

// Removes one recommended field everywhere it appears in its section.
std::vector<Edit> deletions() {
    auto clear_text = [](json& obj, const char* key) { if (obj.is_object() && obj.contains(key)) obj[key] = ""; };
    auto clear_list = [](json& obj, const char* key) { if (obj.is_object() && obj.contains(key)) obj[key] = json::array(); };
    auto erase = [](json& obj, const char* key) { if (obj.is_object()) obj.erase(key); };
    auto in_privacy = [](auto fn) {
        return [fn](json& d) { if (d.contains("privacy")) each(d["privacy"], fn); };
    };
    auto in_procs = [](const char* which, auto fn) {
        return [which, fn](json& d) {
            if (d.contains("procedures") && d["procedures"].contains(which)) each(d["procedures"][which], fn);
        };
    };
    auto in_obj = [](std::initializer_list<const char*> path, auto fn) {
        std::vector<std::string> keys(path.begin(), path.end());
        return [keys, fn](json& d) {
            json* node = &d;
            for (const auto& k : keys) {
                if (!node->is_object() || !node->contains(k)) return;
                node = &(*node)[k];
            }
            fn(*node);
        };
    };
    auto drop_cases = [](const char* kind) {
        return [kind](json& d) {
            json kept = json::array();
            for (const auto& c : d["useCases"]) {
                if (c["kind"] != kind) kept.push_back(c);
            }
            d["useCases"] = kept;
        };
    };
    return {
        {"privacy", in_privacy([=](json& e) { clear_text(e["sensitivity"], "description"); })},
        {"privacy", in_privacy([=](json& e) { clear_list(e["sensitivity"], "types"); })},
        {"privacy", in_privacy([=](json& e) { clear_text(e["confidentiality"], "description"); })},
        {"privacy", in_privacy([=](json& e) { erase(e["confidentiality"], "path"); })},
        {"useTerms", in_obj({"useTerms"}, [=](json& o) { clear_text(o, "description"); })},
        {"useTerms", in_obj({"useTerms"}, [=](json& o) { clear_list(o, "restrictions"); })},
        {"dataAccess", in_obj({"dataAccess"}, [=](json& o) { clear_text(o, "description"); })},
        {"dataAccess", in_obj({"dataAccess"}, [=](json& o) { erase(o, "anonymousAccess"); })},
        {"dataAccess", in_obj({"dataAccess"}, [=](json& o) { erase(o, "registrationRequired"); })},
        {"collection", in_procs("collection", [=](json& p) { clear_text(p, "description"); })},
        {"collection", in_procs("collection", [=](json& p) { clear_list(p, "methods"); })},
        {"collection", in_procs("collection", [=](json& p) { clear_list(p, "consent"); })},
        {"collection", in_procs("collection", [=](json& p) { clear_list(p, "contributors"); })},
        {"processing", in_procs("processing", [=](json& p) { clear_text(p, "description"); })},
        {"processing", in_procs("processing", [=](json& p) { clear_list(p, "methods"); })},
        {"processing", in_procs("processing", [=](json& p) { clear_list(p, "contributors"); })},
        {"update", in_obj({"procedures", "update"}, [=](json& o) { erase(o, "isUpdated"); })},
        {"update", in_obj({"procedures", "update"}, [=](json& o) { erase(o, "periodicity"); })},
        {"update", in_obj({"procedures", "update"}, [=](json& o) { erase(o, "method"); })},
        {"update", in_obj({"procedures", "update"}, [=](json& o) { erase(o, "versioning"); })},
        {"useCases", drop_cases("permitted")},
        {"useCases", drop_cases("prohibited")},
    };
}

// Fills one recommended field, creating its section when absent.
std::vector<Edit> additions() {
    const json person = {{"name", "Pat"}, {"role", "author"}};
    const json method = {{"name", "survey"}, {"description", "d"}};
    auto first_privacy = [](json& d) -> json& {
        if (!d.contains("privacy") || d["privacy"].empty()) d["privacy"] = json::array({json::object()});
        return d["privacy"][0];
    };
    auto first_proc = [](json& d, const char* which) -> json& {
        json& list = at_path(d, {"procedures", which});
        if (!list.is_array() || list.empty()) list = json::array({{{"description", "p"}}});
        return list[0];
    };
    return {
        {"privacy", [=](json& d) { at_path(first_privacy(d), {"sensitivity", "description"}) = "s"; }},
        {"privacy", [=](json& d) { at_path(first_privacy(d), {"sensitivity", "types"}) = json::array({{{"name", "health"}}}); }},
        {"privacy", [=](json& d) { at_path(first_privacy(d), {"confidentiality", "description"}) = "c"; }},
        {"privacy", [=](json& d) { at_path(first_privacy(d), {"confidentiality", "path"}) = "/c.md"; }},
        {"useTerms", [](json& d) { at_path(d, {"useTerms", "description"}) = "terms"; }},
        {"useTerms", [](json& d) { at_path(d, {"useTerms", "restrictions"}) = json::array({"no resale"}); }},
        {"dataAccess", [](json& d) { at_path(d, {"dataAccess", "description"}) = "open"; }},
        {"dataAccess", [](json& d) {
             json& a = object_at(d, {"dataAccess"});
             if (!a.contains("anonymousAccess")) a["anonymousAccess"] = !(a.value("registrationRequired", false));
         }},
        {"dataAccess", [](json& d) {
             json& a = object_at(d, {"dataAccess"});
             if (!a.contains("registrationRequired")) a["registrationRequired"] = !(a.value("anonymousAccess", false));
         }},
        {"collection", [=](json& d) { first_proc(d, "collection")["description"] = "c"; }},
        {"collection", [=](json& d) { first_proc(d, "collection")["methods"].push_back(method); }},
        {"collection", [=](json& d) { first_proc(d, "collection")["consent"].push_back({{"title", "form"}}); }},
        {"collection", [=](json& d) { first_proc(d, "collection")["contributors"].push_back(person); }},
        {"processing", [=](json& d) { first_proc(d, "processing")["description"] = "p"; }},
        {"processing", [=](json& d) { first_proc(d, "processing")["methods"].push_back(method); }},
        {"processing", [=](json& d) { first_proc(d, "processing")["contributors"].push_back(person); }},
        {"update", [](json& d) {
             json& u = object_at(d, {"procedures", "update"});
             if (!u.contains("isUpdated")) u["isUpdated"] = u.contains("periodicity") || u.contains("method") || u.contains("versioning");
         }},
        {"update", [](json& d) {
             json& u = object_at(d, {"procedures", "update"});
             if (u.value("isUpdated", true)) u["periodicity"] = "weekly";
         }},
        {"update", [](json& d) {
             json& u = object_at(d, {"procedures", "update"});
             if (u.value("isUpdated", true)) u["method"] = "incremental";
         }},
        {"update", [](json& d) {
             json& u = object_at(d, {"procedures", "update"});
             if (u.value("isUpdated", true)) u["versioning"] = "semver";
         }},
        {"useCases", [](json& d) { d["useCases"].push_back({{"title", "t"}, {"kind", "permitted"}}); }},
        {"useCases", [](json& d) { d["useCases"].push_back({{"title", "t"}, {"kind", "prohibited"}}); }},
    };
}

json document(const Datasheet& d) { return json::parse(serialize_datasheet(d)); }

void check_against_oracle(const Datasheet& d) {
    const auto expected = odstest::oracle_completeness(document(d));
    const auto actual = completeness_score(d);
    REQUIRE(actual.size() == kRaiSections.size());
    for (auto section : kRaiSections) {
        const std::string key(section);
        CHECK_MESSAGE(actual.at(key) == doctest::Approx(expected.at(key).value()), key);
        CHECK(score_section(d, section).total == expected.at(key).total);
        CHECK(score_section(d, section).populated == expected.at(key).populated);
    }
}

}  // namespace

TEST_SUITE("validation") {

TEST_CASE("minimal sample is valid with a warning per empty RAI section") {
    const ValidationReport r = validate_datasheet(minimal_valid());
    CHECK(r.valid);
    CHECK(r.overall == 0.0);
    for (const char* p : {"/privacy", "/useTerms", "/dataAccess", "/procedures/collection", "/procedures/processing",
                          "/procedures/update", "/useCases"}) {
        CHECK_MESSAGE(has_issue(r, p, "empty-rai-section", Severity::Warning), p);
    }
    CHECK(r.issues.size() == 7);
}

TEST_CASE("name must be a slug") {
    Datasheet d = minimal_valid();
    d.name = "Has Spaces";
    const auto r = validate_datasheet(d);
    CHECK_FALSE(r.valid);
    CHECK(has_issue(r, "/name", "name-not-slug", Severity::Error));
}

TEST_CASE("access flags cannot both be true") {
    Datasheet d = minimal_valid();
    d.dataAccess = DataAccess{true, true, "desc", std::nullopt, {}};
    const auto r = validate_datasheet(d);
    CHECK_FALSE(r.valid);
    CHECK(has_issue(r, "/dataAccess", "access-contradiction", Severity::Error));
}

TEST_CASE("structural invariants each produce one located error") {
    struct Case {
        const char* name;
        std::function<void(Datasheet&)> edit;
        const char* pointer;
        const char* code;
    };
    const std::vector<Case> cases{
        {"bad date", [](Datasheet& d) { d.created = "2023-02-30"; }, "/created", "invalid-date"},
        {"no resources", [](Datasheet& d) { d.resources.clear(); }, "/resources", "empty-resources"},
        {"duplicate resource", [](Datasheet& d) { d.resources.push_back(d.resources[0]); }, "/resources/1/name", "duplicate-resource-name"},
        {"resource slug", [](Datasheet& d) { d.resources[0].name = "Obs Data"; }, "/resources/0/name", "resource-name-not-slug"},
        {"negative bytes", [](Datasheet& d) { d.resources[0].bytes = -1; }, "/resources/0/bytes", "negative-bytes"},
        {"hash", [](Datasheet& d) { d.resources[0].hash = "md5:abc"; }, "/resources/0/hash", "invalid-hash"},
        {"empty schema", [](Datasheet& d) { d.resources[0].schema = TableSchema{}; }, "/resources/0/schema/fields", "empty-schema"},
        {"duplicate field",
         [](Datasheet& d) {
             Field f;
             f.name = "x";
             d.resources[0].schema = TableSchema{{f, f}, {}, {}};
         },
         "/resources/0/schema/fields/1/name", "duplicate-field-name"},
        {"too many samples",
         [](Datasheet& d) {
             Field f;
             f.name = "x";
             f.sampleValues = {"1", "2", "3", "4", "5", "6"};
             d.resources[0].schema = TableSchema{{f}, {}, {}};
         },
         "/resources/0/schema/fields/0/sampleValues", "too-many-sample-values"},
        {"missing sample",
         [](Datasheet& d) {
             Field f;
             f.name = "x";
             f.sampleValues = {"1", "NA"};
             d.resources[0].schema = TableSchema{{f}, {"NA"}, {}};
         },
         "/resources/0/schema/fields/0/sampleValues/1", "sample-value-is-missing"},
        {"license", [](Datasheet& d) { d.licenses[0] = License{}; }, "/licenses/0", "license-without-name-or-path"},
        {"contributor", [](Datasheet& d) { d.contributors.push_back(Contributor{}); }, "/contributors/0/name", "empty-contributor-name"},
        {"source", [](Datasheet& d) { d.sources[0].title.clear(); }, "/sources/0/title", "empty-source-title"},
        {"sensitivity",
         [](Datasheet& d) {
             PrivacyEntry p;
             p.sensitivity.types.push_back(SensitivityType{});
             d.privacy.push_back(p);
         },
         "/privacy/0/sensitivity/types/0/name", "empty-sensitivity-type-name"},
        {"use terms",
         [](Datasheet& d) { d.useTerms = UseTerms{"", std::nullopt, {"no resale"}, {}}; },
         "/useTerms/description", "empty-use-terms-description"},
        {"collection",
         [](Datasheet& d) { d.procedures = Procedures{{CollectionProcedure{}}, {}, std::nullopt, {}}; },
         "/procedures/collection/0/description", "empty-procedure-description"},
        {"processing",
         [](Datasheet& d) { d.procedures = Procedures{{}, {ProcessingProcedure{}}, std::nullopt, {}}; },
         "/procedures/processing/0/description", "empty-procedure-description"},
        {"static update",
         [](Datasheet& d) {
             UpdateProcedure u;
             u.isUpdated = false;
             u.periodicity = "daily";
             d.procedures = Procedures{{}, {}, u, {}};
         },
         "/procedures/update", "update-fields-when-static"},
        {"use case", [](Datasheet& d) { d.useCases.push_back(UseCase{}); }, "/useCases/0/title", "empty-use-case-title"},
    };
    for (const auto& c : cases) {
        Datasheet d = minimal_valid();
        c.edit(d);
        const auto r = validate_datasheet(d);
        CHECK_FALSE_MESSAGE(r.valid, c.name);
        CHECK_MESSAGE(has_issue(r, c.pointer, c.code, Severity::Error), c.name);
        const auto errors = std::count_if(r.issues.begin(), r.issues.end(), [](const Issue& i) { return i.severity == Severity::Error; });
        CHECK_MESSAGE(errors == 1, c.name);
    }
}

TEST_CASE("an untouched template section is a warning, not an error") {
    Datasheet d = new_template("demo", "Demo", "2023-05-01");
    d.resources = minimal_valid().resources;
    const auto r = validate_datasheet(d);
    CHECK(r.valid);
    CHECK(has_issue(r, "/useTerms", "empty-rai-section", Severity::Warning));
}

TEST_CASE("every issue code is registered and issues are ordered") {
    odstest::Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        Datasheet d = odstest::random_datasheet(rng);
        if (i % 3 == 0) d.name = "Bad Name";
        if (i % 4 == 0) d.resources.push_back(d.resources[0]);
        const auto r = validate_datasheet(d);
        for (const auto& issue : r.issues) {
            CHECK(std::find(kIssueCodes.begin(), kIssueCodes.end(), issue.code) != kIssueCodes.end());
            CHECK((issue.pointer.empty() || issue.pointer[0] == '/'));
        }
        CHECK(std::is_sorted(r.issues.begin(), r.issues.end(), [](const Issue& a, const Issue& b) {
            return std::tie(a.pointer, a.code) < std::tie(b.pointer, b.code);
        }));
        const bool has_error = std::any_of(r.issues.begin(), r.issues.end(), [](const Issue& x) { return x.severity == Severity::Error; });
        CHECK(r.valid == !has_error);
        double sum = 0;
        for (const auto& [k, v] : r.completeness) sum += v;
        CHECK(r.overall == doctest::Approx(sum / 7.0));
    }
}

TEST_CASE("empty RAI scores zero everywhere") {
    const auto scores = completeness_score(minimal_valid());
    CHECK(scores.size() == 7);
    for (const auto& [section, value] : scores) CHECK_MESSAGE(value == 0.0, section);
}

TEST_CASE("sensitive sample privacy is complete") {
    const Datasheet d = parse_datasheet(odstest::read_fixture("sensitive.json"));
    const auto scores = completeness_score(d);
    CHECK(scores.at("privacy") == 1.0);
    CHECK(scores.at("collection") == doctest::Approx(0.75));
    check_against_oracle(d);
}

TEST_CASE("full fixture is complete and valid") {
    const auto r = validate_datasheet(parse_datasheet(odstest::read_fixture("full.json")));
    CHECK(r.valid);
    CHECK(r.overall == 1.0);
    CHECK(r.issues.empty());
}

TEST_CASE("update section denominators") {
    Datasheet d = minimal_valid();
    d.procedures = Procedures{};
    d.procedures->update = UpdateProcedure{};
    CHECK(score_section(d, "update").total == 4);
    CHECK(score_section(d, "update").populated == 0);
    d.procedures->update->isUpdated = false;
    CHECK(score_section(d, "update").total == 1);
    CHECK(score_section(d, "update").populated == 1);
    d.procedures->update->isUpdated = true;
    d.procedures->update->periodicity = "daily";
    CHECK(score_section(d, "update").populated == 2);
    CHECK(score_section(d, "update").total == 4);
}

TEST_CASE("scores agree with the field-counting oracle") {
    odstest::Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        odstest::GeneratorOptions opts;
        opts.richRai = i % 2 == 0;
        check_against_oracle(odstest::random_datasheet(rng, opts));
    }
}

TEST_CASE("deleting one recommended field lowers exactly one section by one step") {
    odstest::Rng rng(2718);
    const auto edits = deletions();
    int exercised = 0;
    for (int i = 0; i < 60; ++i) {
        odstest::GeneratorOptions opts;
        opts.richRai = true;
        const Datasheet d = odstest::random_datasheet(rng, opts);
        const json doc = document(d);
        const auto before = completeness_score(d);
        const auto oracle_before = odstest::oracle_completeness(doc);
        const Edit& edit = edits[static_cast<std::size_t>(odstest::uniform(rng, 0, static_cast<int>(edits.size()) - 1))];
        json changed = doc;
        edit.apply(changed);
        const auto oracle_after = odstest::oracle_completeness(changed);
        if (oracle_after.at(edit.section).populated == oracle_before.at(edit.section).populated) continue;
        ++exercised;

        const auto after = completeness_score(datasheet_from_json(changed));
        for (auto section : kRaiSections) {
            const std::string key(section);
            if (key == edit.section) {
                CHECK(before.at(key) - after.at(key) == doctest::Approx(1.0 / oracle_before.at(key).total));
            } else {
                CHECK_MESSAGE(after.at(key) == before.at(key), key);
            }
        }
    }
    CHECK(exercised >= 30);
}

TEST_CASE("populating a recommended field never lowers a score") {
    odstest::Rng rng(314);
    const auto edits = additions();
    for (int i = 0; i < 80; ++i) {
        const Datasheet d = odstest::random_datasheet(rng);
        const auto before = completeness_score(d);
        for (const auto& edit : edits) {
            json changed = document(d);
            edit.apply(changed);
            const auto after = completeness_score(datasheet_from_json(changed));
            for (auto section : kRaiSections) {
                const std::string key(section);
                CHECK_MESSAGE(after.at(key) >= before.at(key), key);
            }
        }
    }
}

TEST_CASE("validation is deterministic and survives a round trip") {
    odstest::Rng rng(8);
    for (int i = 0; i < 30; ++i) {
        const Datasheet d = odstest::random_datasheet(rng);
        const auto a = validate_datasheet(d);
        const auto b = validate_datasheet(parse_datasheet(serialize_datasheet(d)));
        CHECK(serialize_report(a) == serialize_report(b));
    }
}

TEST_CASE("report JSON field order") {
    const std::string text = serialize_report(validate_datasheet(minimal_valid()));
    const json plain = json::parse(text);
    CHECK(plain["valid"] == true);
    CHECK(text.find("\"valid\"") < text.find("\"overall\""));
    CHECK(text.find("\"overall\"") < text.find("\"completeness\""));
    CHECK(text.find("\"completeness\"") < text.find("\"issues\""));
    CHECK(text.find("\"privacy\"") < text.find("\"useTerms\""));
    CHECK(text.find("\"update\"") < text.find("\"useCases\""));
    const auto& issue = plain["issues"][0];
    CHECK(issue.size() == 4);
    CHECK(issue.contains("pointer"));
    CHECK(issue["severity"] == "warning");
}

}  // TEST_SUITE
