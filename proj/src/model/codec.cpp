#include "ods/codec.hpp"

#include <set>
#include <utility>

#include "ods/error.hpp"

namespace ods {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const char* kind_name(const json& v) {
    switch (v.type()) {
        case json::value_t::null: return "null";
        case json::value_t::object: return "object";
        case json::value_t::array: return "array";
        case json::value_t::string: return "string";
        case json::value_t::boolean: return "boolean";
        case json::value_t::number_integer:
        case json::value_t::number_unsigned: return "integer";
        case json::value_t::number_float: return "number";
        default: return "value";
    }
}

[[noreturn]] void wrong_kind(const std::string& pointer, const char* expected, const json& got) {
    throw ParseError(ParseError::Kind::WrongKind, pointer,
                     std::string("expected ") + expected + ", found " + kind_name(got));
}

/// Walks one JSON object, handing out typed values for known keys and
/// collecting the rest as extensions.
class ObjectReader {
public:
    ObjectReader(const json& value, std::string pointer) : obj_(value), pointer_(std::move(pointer)) {
        if (!obj_.is_object()) wrong_kind(pointer_, "object", obj_);
    }

    const std::string& pointer() const { return pointer_; }
    std::string child(std::string_view key) const { return pointer_ + "/" + escape_pointer_token(key); }

    const json* find(std::string_view key) {
        auto it = obj_.find(std::string(key));
        if (it == obj_.end()) return nullptr;
        consumed_.emplace(key);
        return &*it;
    }

    const json& require(std::string_view key) {
        const json* v = find(key);
        if (!v) {
            throw ParseError(ParseError::Kind::MissingKey, pointer_,
                             "required key \"" + std::string(key) + "\" is missing");
        }
        return *v;
    }

    std::optional<std::string> opt_text(std::string_view key) {
        const json* v = find(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) wrong_kind(child(key), "string", *v);
        return v->get<std::string>();
    }

    std::string text(std::string_view key) { return opt_text(key).value_or(std::string{}); }

    std::string required_text(std::string_view key) {
        const json& v = require(key);
        if (!v.is_string()) wrong_kind(child(key), "string", v);
        return v.get<std::string>();
    }

    std::optional<bool> opt_bool(std::string_view key) {
        const json* v = find(key);
        if (!v) return std::nullopt;
        if (!v->is_boolean()) wrong_kind(child(key), "boolean", *v);
        return v->get<bool>();
    }

    std::optional<std::int64_t> opt_integer(std::string_view key) {
        const json* v = find(key);
        if (!v) return std::nullopt;
        if (v->is_number_unsigned()) {
            const auto u = v->get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(INT64_MAX)) {
                throw ParseError(ParseError::Kind::InvalidValue, child(key), "integer out of range");
            }
            return static_cast<std::int64_t>(u);
        }
        if (!v->is_number_integer()) wrong_kind(child(key), "integer", *v);
        return v->get<std::int64_t>();
    }

    template <typename Enum, typename Lookup>
    std::optional<Enum> opt_enum(std::string_view key, Lookup lookup) {
        auto s = opt_text(key);
        if (!s) return std::nullopt;
        auto e = lookup(*s);
        if (!e) {
            throw ParseError(ParseError::Kind::InvalidValue, child(key),
                             "\"" + *s + "\" is not an accepted value");
        }
        return e;
    }

    std::vector<std::string> text_list(std::string_view key) {
        std::vector<std::string> out;
        const json* v = find(key);
        if (!v) return out;
        if (!v->is_array()) wrong_kind(child(key), "array", *v);
        const std::string base = child(key);
        for (std::size_t i = 0; i < v->size(); ++i) {
            const json& item = (*v)[i];
            if (!item.is_string()) wrong_kind(base + "/" + std::to_string(i), "string", item);
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    template <typename Fn>
    auto list(std::string_view key, Fn read_item) {
        using T = decltype(read_item(std::declval<const json&>(), std::string{}));
        std::vector<T> out;
        const json* v = find(key);
        if (!v) return out;
        if (!v->is_array()) wrong_kind(child(key), "array", *v);
        const std::string base = child(key);
        out.reserve(v->size());
        for (std::size_t i = 0; i < v->size(); ++i) {
            out.push_back(read_item((*v)[i], base + "/" + std::to_string(i)));
        }
        return out;
    }

    template <typename Fn>
    auto opt_record(std::string_view key, Fn read_item) {
        using T = decltype(read_item(std::declval<const json&>(), std::string{}));
        const json* v = find(key);
        if (!v) return std::optional<T>{};
        return std::optional<T>{read_item(*v, child(key))};
    }

    template <typename Fn>
    auto record(std::string_view key, Fn read_item) {
        using T = decltype(read_item(std::declval<const json&>(), std::string{}));
        return opt_record(key, read_item).value_or(T{});
    }

    Extensions rest() const {
        Extensions out;
        for (const auto& [key, value] : obj_.items()) {
            if (!consumed_.contains(key)) out.emplace(key, value);
        }
        return out;
    }

private:
    const json& obj_;
    std::string pointer_;
    std::set<std::string, std::less<>> consumed_;
};

License read_license(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    License out;
    out.name = r.opt_text("name");
    out.title = r.opt_text("title");
    out.path = r.opt_text("path");
    out.extra = r.rest();
    return out;
}

Contributor read_contributor(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Contributor out;
    out.name = r.text("name");
    out.role = r.opt_enum<ContributorRole>("role", contributor_role_from).value_or(ContributorRole::Contributor);
    out.organization = r.opt_text("organization");
    out.email = r.opt_text("email");
    out.path = r.opt_text("path");
    out.extra = r.rest();
    return out;
}

Source read_source(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Source out;
    out.title = r.text("title");
    out.path = r.opt_text("path");
    out.description = r.opt_text("description");
    out.extra = r.rest();
    return out;
}

Field read_field(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Field out;
    out.name = r.required_text("name");
    out.type = r.opt_enum<FieldType>("type", field_type_from).value_or(FieldType::String);
    out.description = r.opt_text("description");
    out.sampleValues = r.text_list("sampleValues");
    out.extra = r.rest();
    return out;
}

TableSchema read_schema(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    TableSchema out;
    out.fields = r.list("fields", read_field);
    out.missingValues = r.text_list("missingValues");
    out.extra = r.rest();
    return out;
}

Resource read_resource(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Resource out;
    out.name = r.required_text("name");
    out.path = r.text("path");
    out.format = r.opt_enum<ResourceFormat>("format", resource_format_from).value_or(ResourceFormat::Other);
    out.mediatype = r.text("mediatype");
    out.encoding = r.text("encoding");
    out.bytes = r.opt_integer("bytes");
    out.hash = r.opt_text("hash");
    out.schema = r.opt_record("schema", read_schema);
    out.extra = r.rest();
    return out;
}

SensitivityType read_sensitivity_type(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    SensitivityType out;
    out.name = r.text("name");
    out.description = r.text("description");
    out.extra = r.rest();
    return out;
}

Sensitivity read_sensitivity(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Sensitivity out;
    out.description = r.text("description");
    out.types = r.list("types", read_sensitivity_type);
    out.extra = r.rest();
    return out;
}

Confidentiality read_confidentiality(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Confidentiality out;
    out.path = r.opt_text("path");
    out.description = r.text("description");
    out.extra = r.rest();
    return out;
}

PrivacyEntry read_privacy(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    PrivacyEntry out;
    out.sensitivity = r.record("sensitivity", read_sensitivity);
    out.confidentiality = r.record("confidentiality", read_confidentiality);
    out.extra = r.rest();
    return out;
}

UseTerms read_use_terms(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    UseTerms out;
    out.description = r.text("description");
    out.path = r.opt_text("path");
    out.restrictions = r.text_list("restrictions");
    out.extra = r.rest();
    return out;
}

DataAccess read_data_access(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    DataAccess out;
    out.anonymousAccess = r.opt_bool("anonymousAccess");
    out.registrationRequired = r.opt_bool("registrationRequired");
    out.description = r.text("description");
    out.path = r.opt_text("path");
    out.extra = r.rest();
    return out;
}

Method read_method(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Method out;
    out.name = r.text("name");
    out.description = r.text("description");
    out.path = r.opt_text("path");
    out.extra = r.rest();
    return out;
}

ConsentRecord read_consent(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    ConsentRecord out;
    out.title = r.text("title");
    out.description = r.text("description");
    out.path = r.opt_text("path");
    out.extra = r.rest();
    return out;
}

CollectionProcedure read_collection(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    CollectionProcedure out;
    out.description = r.text("description");
    out.path = r.opt_text("path");
    out.contributors = r.list("contributors", read_contributor);
    out.methods = r.list("methods", read_method);
    out.consent = r.list("consent", read_consent);
    out.extra = r.rest();
    return out;
}

ProcessingProcedure read_processing(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    ProcessingProcedure out;
    out.description = r.text("description");
    out.methods = r.list("methods", read_method);
    out.contributors = r.list("contributors", read_contributor);
    out.extra = r.rest();
    return out;
}

UpdateProcedure read_update(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    UpdateProcedure out;
    out.isUpdated = r.opt_bool("isUpdated");
    out.periodicity = r.opt_text("periodicity");
    out.method = r.opt_enum<UpdateMethod>("method", update_method_from);
    out.methodDescription = r.opt_text("methodDescription");
    out.versioning = r.opt_text("versioning");
    out.contributors = r.list("contributors", read_contributor);
    out.extra = r.rest();
    return out;
}

Procedures read_procedures(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    Procedures out;
    out.collection = r.list("collection", read_collection);
    out.processing = r.list("processing", read_processing);
    out.update = r.opt_record("update", read_update);
    out.extra = r.rest();
    return out;
}

UseCase read_use_case(const json& v, const std::string& ptr) {
    ObjectReader r(v, ptr);
    UseCase out;
    out.title = r.text("title");
    out.description = r.text("description");
    r.require("kind");
    out.kind = *r.opt_enum<UseCaseKind>("kind", use_case_kind_from);
    out.extra = r.rest();
    return out;
}

// ---- writing ----

ordered_json to_ordered(const json& v) {
    switch (v.type()) {
        case json::value_t::object: {
            ordered_json out = ordered_json::object();
            for (const auto& [key, value] : v.items()) out[key] = to_ordered(value);
            return out;
        }
        case json::value_t::array: {
            ordered_json out = ordered_json::array();
            for (const auto& item : v) out.push_back(to_ordered(item));
            return out;
        }
        case json::value_t::string: return v.get<std::string>();
        case json::value_t::boolean: return v.get<bool>();
        case json::value_t::number_integer: return v.get<std::int64_t>();
        case json::value_t::number_unsigned: return v.get<std::uint64_t>();
        case json::value_t::number_float: return v.get<double>();
        default: return nullptr;
    }
}

void put_opt(ordered_json& out, const char* key, const std::optional<std::string>& v) {
    if (v) out[key] = *v;
}

void put_extra(ordered_json& out, const Extensions& extra) {
    for (const auto& [key, value] : extra) out[key] = to_ordered(value);
}

ordered_json text_array(const std::vector<std::string>& items) {
    ordered_json out = ordered_json::array();
    for (const auto& s : items) out.push_back(s);
    return out;
}

template <typename T, typename Fn>
ordered_json array_of(const std::vector<T>& items, Fn fn) {
    ordered_json out = ordered_json::array();
    for (const auto& item : items) out.push_back(fn(item));
    return out;
}

ordered_json write_license(const License& l) {
    ordered_json out = ordered_json::object();
    put_opt(out, "name", l.name);
    put_opt(out, "title", l.title);
    put_opt(out, "path", l.path);
    put_extra(out, l.extra);
    return out;
}

ordered_json write_contributor(const Contributor& c) {
    ordered_json out = ordered_json::object();
    out["name"] = c.name;
    out["role"] = to_string(c.role);
    put_opt(out, "organization", c.organization);
    put_opt(out, "email", c.email);
    put_opt(out, "path", c.path);
    put_extra(out, c.extra);
    return out;
}

ordered_json write_source(const Source& s) {
    ordered_json out = ordered_json::object();
    out["title"] = s.title;
    put_opt(out, "path", s.path);
    put_opt(out, "description", s.description);
    put_extra(out, s.extra);
    return out;
}

ordered_json write_field(const Field& f) {
    ordered_json out = ordered_json::object();
    out["name"] = f.name;
    out["type"] = to_string(f.type);
    put_opt(out, "description", f.description);
    out["sampleValues"] = text_array(f.sampleValues);
    put_extra(out, f.extra);
    return out;
}

ordered_json write_schema(const TableSchema& s) {
    ordered_json out = ordered_json::object();
    out["fields"] = array_of(s.fields, write_field);
    out["missingValues"] = text_array(s.missingValues);
    put_extra(out, s.extra);
    return out;
}

ordered_json write_resource(const Resource& r) {
    ordered_json out = ordered_json::object();
    out["name"] = r.name;
    out["path"] = r.path;
    out["format"] = to_string(r.format);
    out["mediatype"] = r.mediatype;
    out["encoding"] = r.encoding;
    if (r.bytes) out["bytes"] = *r.bytes;
    put_opt(out, "hash", r.hash);
    if (r.schema) out["schema"] = write_schema(*r.schema);
    put_extra(out, r.extra);
    return out;
}

ordered_json write_privacy(const PrivacyEntry& p) {
    ordered_json sensitivity = ordered_json::object();
    sensitivity["description"] = p.sensitivity.description;
    sensitivity["types"] = array_of(p.sensitivity.types, [](const SensitivityType& t) {
        ordered_json out = ordered_json::object();
        out["name"] = t.name;
        out["description"] = t.description;
        put_extra(out, t.extra);
        return out;
    });
    put_extra(sensitivity, p.sensitivity.extra);

    ordered_json confidentiality = ordered_json::object();
    put_opt(confidentiality, "path", p.confidentiality.path);
    confidentiality["description"] = p.confidentiality.description;
    put_extra(confidentiality, p.confidentiality.extra);

    ordered_json out = ordered_json::object();
    out["sensitivity"] = std::move(sensitivity);
    out["confidentiality"] = std::move(confidentiality);
    put_extra(out, p.extra);
    return out;
}

ordered_json write_use_terms(const UseTerms& u) {
    ordered_json out = ordered_json::object();
    out["description"] = u.description;
    put_opt(out, "path", u.path);
    out["restrictions"] = text_array(u.restrictions);
    put_extra(out, u.extra);
    return out;
}

ordered_json write_data_access(const DataAccess& a) {
    ordered_json out = ordered_json::object();
    if (a.anonymousAccess) out["anonymousAccess"] = *a.anonymousAccess;
    if (a.registrationRequired) out["registrationRequired"] = *a.registrationRequired;
    out["description"] = a.description;
    put_opt(out, "path", a.path);
    put_extra(out, a.extra);
    return out;
}

ordered_json write_method(const Method& m) {
    ordered_json out = ordered_json::object();
    out["name"] = m.name;
    out["description"] = m.description;
    put_opt(out, "path", m.path);
    put_extra(out, m.extra);
    return out;
}

ordered_json write_consent(const ConsentRecord& c) {
    ordered_json out = ordered_json::object();
    out["title"] = c.title;
    out["description"] = c.description;
    put_opt(out, "path", c.path);
    put_extra(out, c.extra);
    return out;
}

ordered_json write_collection(const CollectionProcedure& c) {
    ordered_json out = ordered_json::object();
    out["description"] = c.description;
    put_opt(out, "path", c.path);
    out["contributors"] = array_of(c.contributors, write_contributor);
    out["methods"] = array_of(c.methods, write_method);
    out["consent"] = array_of(c.consent, write_consent);
    put_extra(out, c.extra);
    return out;
}

ordered_json write_processing(const ProcessingProcedure& p) {
    ordered_json out = ordered_json::object();
    out["description"] = p.description;
    out["methods"] = array_of(p.methods, write_method);
    out["contributors"] = array_of(p.contributors, write_contributor);
    put_extra(out, p.extra);
    return out;
}

ordered_json write_update(const UpdateProcedure& u) {
    ordered_json out = ordered_json::object();
    if (u.isUpdated) out["isUpdated"] = *u.isUpdated;
    put_opt(out, "periodicity", u.periodicity);
    if (u.method) out["method"] = to_string(*u.method);
    put_opt(out, "methodDescription", u.methodDescription);
    put_opt(out, "versioning", u.versioning);
    out["contributors"] = array_of(u.contributors, write_contributor);
    put_extra(out, u.extra);
    return out;
}

ordered_json write_procedures(const Procedures& p) {
    ordered_json out = ordered_json::object();
    out["collection"] = array_of(p.collection, write_collection);
    out["processing"] = array_of(p.processing, write_processing);
    if (p.update) out["update"] = write_update(*p.update);
    put_extra(out, p.extra);
    return out;
}

ordered_json write_use_case(const UseCase& u) {
    ordered_json out = ordered_json::object();
    out["title"] = u.title;
    out["description"] = u.description;
    out["kind"] = to_string(u.kind);
    put_extra(out, u.extra);
    return out;
}

}  // namespace

Datasheet datasheet_from_json(const json& doc) {
    ObjectReader r(doc, "");
    Datasheet d;
    d.name = r.required_text("name");
    d.title = r.text("title");
    d.description = r.text("description");
    d.version = r.text("version");
    d.created = r.opt_text("created");
    d.homepage = r.opt_text("homepage");
    d.keywords = r.text_list("keywords");
    d.licenses = r.list("licenses", read_license);
    d.contributors = r.list("contributors", read_contributor);
    d.sources = r.list("sources", read_source);
    d.resources = r.list("resources", read_resource);
    d.privacy = r.list("privacy", read_privacy);
    d.useTerms = r.opt_record("useTerms", read_use_terms);
    d.dataAccess = r.opt_record("dataAccess", read_data_access);
    d.procedures = r.opt_record("procedures", read_procedures);
    d.useCases = r.list("useCases", read_use_case);
    d.extra = r.rest();
    return d;
}

Datasheet parse_datasheet(std::string_view json_text) {
    return datasheet_from_json(parse_json_strict(json_text));
}

Resource resource_from_json(const json& value, const std::string& pointer) {
    return read_resource(value, pointer);
}

Resource parse_resource(std::string_view json_text) {
    return read_resource(parse_json_strict(json_text), "");
}

ordered_json to_ordered_json(const Datasheet& d) {
    ordered_json out = ordered_json::object();
    out["name"] = d.name;
    out["title"] = d.title;
    out["description"] = d.description;
    out["version"] = d.version;
    put_opt(out, "created", d.created);
    put_opt(out, "homepage", d.homepage);
    out["keywords"] = text_array(d.keywords);
    out["licenses"] = array_of(d.licenses, write_license);
    out["contributors"] = array_of(d.contributors, write_contributor);
    out["sources"] = array_of(d.sources, write_source);
    out["resources"] = array_of(d.resources, write_resource);
    out["privacy"] = array_of(d.privacy, write_privacy);
    if (d.useTerms) out["useTerms"] = write_use_terms(*d.useTerms);
    if (d.dataAccess) out["dataAccess"] = write_data_access(*d.dataAccess);
    if (d.procedures) out["procedures"] = write_procedures(*d.procedures);
    out["useCases"] = array_of(d.useCases, write_use_case);
    put_extra(out, d.extra);
    return out;
}

ordered_json to_ordered_json(const Resource& r) { return write_resource(r); }
ordered_json to_ordered_json(const PrivacyEntry& p) { return write_privacy(p); }
ordered_json to_ordered_json(const UseTerms& u) { return write_use_terms(u); }
ordered_json to_ordered_json(const DataAccess& a) { return write_data_access(a); }
ordered_json to_ordered_json(const Procedures& p) { return write_procedures(p); }
ordered_json to_ordered_json(const UseCase& u) { return write_use_case(u); }
ordered_json to_ordered_json(const Contributor& c) { return write_contributor(c); }

std::string canonical_text(const ordered_json& value) {
    std::string out = value.dump(2, ' ', false, ordered_json::error_handler_t::strict);
    out += '\n';
    return out;
}

std::string serialize_datasheet(const Datasheet& sheet) { return canonical_text(to_ordered_json(sheet)); }

std::string serialize_resource(const Resource& resource) { return canonical_text(write_resource(resource)); }

}  // namespace ods
