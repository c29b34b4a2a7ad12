#include "ods/jsonld.hpp"

#include "ods/codec.hpp"

namespace ods {

using nlohmann::ordered_json;

namespace {

ordered_json creator(const Contributor& c) {
    ordered_json out = ordered_json::object();
    out["@type"] = c.organization ? "Organization" : "Person";
    out["name"] = c.name;
    if (c.email) out["email"] = *c.email;
    if (c.path) out["url"] = *c.path;
    return out;
}

ordered_json distribution(const Resource& r) {
    ordered_json out = ordered_json::object();
    out["@type"] = "DataDownload";
    out["name"] = r.name;
    out["contentUrl"] = r.path;
    out["encodingFormat"] = r.mediatype;
    if (r.bytes) out["contentSize"] = std::to_string(*r.bytes);
    return out;
}

}  // namespace

ordered_json jsonld_context() {
    ordered_json ctx = ordered_json::object();
    ctx["@vocab"] = "https://schema.org/";
    ctx["ods"] = kOdsNamespace;
    return ctx;
}

JsonLdDocument to_jsonld(const Datasheet& d) {
    ordered_json body = ordered_json::object();
    body["@context"] = jsonld_context();
    body["@type"] = "Dataset";
    body["identifier"] = d.name;
    body["name"] = d.title.empty() ? d.name : d.title;
    if (!d.description.empty()) body["description"] = d.description;
    if (!d.version.empty()) body["version"] = d.version;
    if (d.created) body["dateCreated"] = *d.created;
    if (!d.keywords.empty()) body["keywords"] = d.keywords;

    ordered_json licenses = ordered_json::array();
    for (const auto& l : d.licenses) {
        if (l.path) {
            licenses.push_back(*l.path);
        } else if (l.name) {
            licenses.push_back(*l.name);
        }
    }
    if (!licenses.empty()) body["license"] = std::move(licenses);

    ordered_json creators = ordered_json::array();
    for (const auto& c : d.contributors) {
        if (c.role == ContributorRole::Author || c.role == ContributorRole::Publisher) creators.push_back(creator(c));
    }
    if (!creators.empty()) body["creator"] = std::move(creators);

    ordered_json distributions = ordered_json::array();
    for (const auto& r : d.resources) distributions.push_back(distribution(r));
    body["distribution"] = std::move(distributions);

    // RAI blocks are copied from the canonical datasheet form so they match it exactly.
    const ordered_json canonical = to_ordered_json(d);
    for (const auto& [ods_key, sheet_key] : kOdsKeys) {
        const std::string key(sheet_key);
        if (canonical.contains(key)) body[std::string(ods_key)] = canonical[key];
    }
    return JsonLdDocument{std::move(body)};
}

std::string JsonLdDocument::serialize() const { return canonical_text(body); }

}  // namespace ods
