#include "ods/policy.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "ods/codec.hpp"
#include "ods/error.hpp"

namespace ods {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(CheckKind v) noexcept {
    switch (v) {
        case CheckKind::Exists: return "exists";
        case CheckKind::NotExists: return "not-exists";
        case CheckKind::Equals: return "equals";
        case CheckKind::OneOf: return "one-of";
        case CheckKind::NotOneOf: return "not-one-of";
        case CheckKind::Matches: return "matches";
        case CheckKind::MinCount: return "min-count";
    }
    return "exists";
}

std::string_view to_string(Quantifier v) noexcept { return v == Quantifier::Any ? "any" : "all"; }
std::string_view to_string(FailAction v) noexcept { return v == FailAction::Review ? "review" : "reject"; }

std::string_view to_string(Decision v) noexcept {
    switch (v) {
        case Decision::Accept: return "accept";
        case Decision::Review: return "review";
        case Decision::Reject: return "reject";
    }
    return "accept";
}

std::string_view to_string(RuleAction v) noexcept {
    switch (v) {
        case RuleAction::None: return "none";
        case RuleAction::Review: return "review";
        case RuleAction::Reject: return "reject";
    }
    return "none";
}

PathExpr PathExpr::parse(std::string_view text) {
    PathExpr out;
    out.text_ = std::string(text);
    if (text.empty()) return out;
    if (text.front() != '/') {
        throw ParseError(ParseError::Kind::InvalidValue, "", "path \"" + out.text_ + "\" must start with '/'");
    }
    std::string token;
    for (std::size_t i = 1; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '/') {
            out.tokens_.push_back(std::move(token));
            token.clear();
            continue;
        }
        if (text[i] == '~') {
            const char next = i + 1 < text.size() ? text[i + 1] : '\0';
            if (next != '0' && next != '1') {
                throw ParseError(ParseError::Kind::InvalidValue, "",
                                 "path \"" + out.text_ + "\" has a '~' not followed by 0 or 1");
            }
            token += next == '0' ? '~' : '/';
            ++i;
            continue;
        }
        token += text[i];
    }
    return out;
}

bool PathExpr::has_wildcard() const noexcept {
    return std::find(tokens_.begin(), tokens_.end(), "*") != tokens_.end();
}

namespace {

[[noreturn]] void policy_error(ParseError::Kind kind, const std::string& pointer, const std::string& detail) {
    throw ParseError(kind, pointer, detail);
}

const json& expect(const json& v, json::value_t type, const char* what, const std::string& pointer) {
    const bool ok = type == json::value_t::number_unsigned
                        ? v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)
                        : v.type() == type;
    if (!ok) policy_error(ParseError::Kind::WrongKind, pointer, std::string("expected ") + what);
    return v;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known, const std::string& pointer) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            policy_error(ParseError::Kind::InvalidValue, pointer + "/" + escape_pointer_token(key),
                         "unknown key \"" + key + "\"");
        }
    }
}

std::string opt_text(const json& obj, const char* key, const std::string& pointer) {
    auto it = obj.find(key);
    if (it == obj.end()) return {};
    return expect(*it, json::value_t::string, "string", pointer + "/" + key).get<std::string>();
}

const json& required(const json& obj, const char* key, const std::string& pointer) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        policy_error(ParseError::Kind::MissingKey, pointer, std::string("required key \"") + key + "\" is missing");
    }
    return *it;
}

constexpr std::array<std::pair<std::string_view, CheckKind>, 7> kChecks{{
    {"exists", CheckKind::Exists},
    {"not-exists", CheckKind::NotExists},
    {"equals", CheckKind::Equals},
    {"one-of", CheckKind::OneOf},
    {"not-one-of", CheckKind::NotOneOf},
    {"matches", CheckKind::Matches},
    {"min-count", CheckKind::MinCount},
}};

Check read_check(const json& v, const std::string& pointer) {
    std::string name;
    const json* operand = nullptr;
    if (v.is_string()) {
        name = v.get<std::string>();
    } else if (v.is_object() && v.size() == 1) {
        name = v.begin().key();
        operand = &v.begin().value();
    } else {
        policy_error(ParseError::Kind::WrongKind, pointer, "check must be a name or a single-key object");
    }
    auto it = std::find_if(kChecks.begin(), kChecks.end(), [&](const auto& p) { return p.first == name; });
    if (it == kChecks.end()) policy_error(ParseError::Kind::InvalidValue, pointer, "unknown check \"" + name + "\"");

    Check c;
    c.kind = it->second;
    const bool nullary = c.kind == CheckKind::Exists || c.kind == CheckKind::NotExists;
    if (nullary) {
        if (operand) policy_error(ParseError::Kind::InvalidValue, pointer, "check \"" + name + "\" takes no argument");
        return c;
    }
    if (!operand) policy_error(ParseError::Kind::MissingKey, pointer, "check \"" + name + "\" needs an argument");
    const std::string arg_ptr = pointer + "/" + escape_pointer_token(name);
    switch (c.kind) {
        case CheckKind::Equals:
            c.operand = *operand;
            break;
        case CheckKind::OneOf:
        case CheckKind::NotOneOf:
            c.operand = expect(*operand, json::value_t::array, "array", arg_ptr);
            break;
        case CheckKind::Matches:
            c.operand = expect(*operand, json::value_t::string, "string", arg_ptr);
            try {
                c.regex = std::make_shared<const std::regex>(c.operand.get<std::string>(), std::regex::ECMAScript);
            } catch (const std::regex_error& e) {
                policy_error(ParseError::Kind::InvalidValue, arg_ptr, std::string("regex does not compile: ") + e.what());
            }
            break;
        case CheckKind::MinCount:
            c.minCount = expect(*operand, json::value_t::number_unsigned, "non-negative integer", arg_ptr)
                             .get<std::uint64_t>();
            c.operand = c.minCount;
            break;
        default:
            break;
    }
    return c;
}

Rule read_rule(const json& v, const std::string& pointer) {
    expect(v, json::value_t::object, "object", pointer);
    reject_unknown_keys(v, {"id", "description", "path", "check", "quantifier", "onFail", "message"}, pointer);
    Rule r;
    r.id = expect(required(v, "id", pointer), json::value_t::string, "string", pointer + "/id").get<std::string>();
    if (!is_slug(r.id)) policy_error(ParseError::Kind::InvalidValue, pointer + "/id", "rule id must be a slug");
    r.description = opt_text(v, "description", pointer);
    const auto& path = expect(required(v, "path", pointer), json::value_t::string, "string", pointer + "/path");
    try {
        r.path = PathExpr::parse(path.get<std::string>());
    } catch (const ParseError& e) {
        policy_error(ParseError::Kind::InvalidValue, pointer + "/path", e.detail());
    }
    r.check = read_check(required(v, "check", pointer), pointer + "/check");
    if (auto it = v.find("quantifier"); it != v.end()) {
        const auto q = expect(*it, json::value_t::string, "string", pointer + "/quantifier").get<std::string>();
        if (q == "any") {
            r.quantifier = Quantifier::Any;
        } else if (q == "all") {
            r.quantifier = Quantifier::All;
        } else {
            policy_error(ParseError::Kind::InvalidValue, pointer + "/quantifier", "quantifier must be any or all");
        }
    }
    const auto on_fail =
        expect(required(v, "onFail", pointer), json::value_t::string, "string", pointer + "/onFail").get<std::string>();
    if (on_fail == "review") {
        r.onFail = FailAction::Review;
    } else if (on_fail == "reject") {
        r.onFail = FailAction::Reject;
    } else {
        policy_error(ParseError::Kind::InvalidValue, pointer + "/onFail", "onFail must be review or reject");
    }
    r.message = opt_text(v, "message", pointer);
    return r;
}

std::string value_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool satisfies(const Check& check, const json& value) {
    switch (check.kind) {
        case CheckKind::Equals: return value == check.operand;
        case CheckKind::OneOf:
            return std::find(check.operand.begin(), check.operand.end(), value) != check.operand.end();
        case CheckKind::NotOneOf:
            return std::find(check.operand.begin(), check.operand.end(), value) == check.operand.end();
        case CheckKind::Matches:
            if (value.is_structured()) return false;
            return std::regex_search(value_text(value), *check.regex);
        default: return false;
    }
}

void collect(const json& node, const std::vector<std::string>& tokens, std::size_t depth, std::vector<json>& out) {
    if (depth == tokens.size()) {
        out.push_back(node);
        return;
    }
    const std::string& token = tokens[depth];
    if (node.is_array()) {
        if (token == "*") {
            for (const auto& item : node) collect(item, tokens, depth + 1, out);
            return;
        }
        if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            (token.size() > 1 && token.front() == '0')) {
            return;
        }
        if (token.size() > 18) return;
        const auto index = std::stoull(token);
        if (index < node.size()) collect(node[index], tokens, depth + 1, out);
        return;
    }
    if (node.is_object()) {
        auto it = node.find(token);
        if (it != node.end()) collect(*it, tokens, depth + 1, out);
    }
}

json to_plain(const ordered_json& v) {
    switch (v.type()) {
        case json::value_t::object: {
            json out = json::object();
            for (const auto& [key, value] : v.items()) out[key] = to_plain(value);
            return out;
        }
        case json::value_t::array: {
            json out = json::array();
            for (const auto& item : v) out.push_back(to_plain(item));
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

ordered_json to_ordered(const json& v) { return ordered_json::parse(v.dump()); }

}  // namespace

Policy policy_from_json(const json& doc) {
    expect(doc, json::value_t::object, "object", "");
    reject_unknown_keys(doc, {"name", "version", "rules"}, "");
    Policy p;
    p.name = opt_text(doc, "name", "");
    p.version = opt_text(doc, "version", "");
    if (auto it = doc.find("rules"); it != doc.end()) {
        expect(*it, json::value_t::array, "array", "/rules");
        std::set<std::string> ids;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string ptr = "/rules/" + std::to_string(i);
            Rule r = read_rule((*it)[i], ptr);
            if (!ids.insert(r.id).second) {
                policy_error(ParseError::Kind::InvalidValue, ptr + "/id", "duplicate rule id \"" + r.id + "\"");
            }
            p.rules.push_back(std::move(r));
        }
    }
    return p;
}

Policy parse_policy(std::string_view json_text) { return policy_from_json(parse_json_strict(json_text)); }

json datasheet_document(const Datasheet& sheet) { return to_plain(to_ordered_json(sheet)); }

std::vector<json> resolve_path(const json& doc, const PathExpr& path) {
    std::vector<json> out;
    collect(doc, path.tokens(), 0, out);
    return out;
}

std::vector<json> resolve_path(const Datasheet& sheet, std::string_view path) {
    return resolve_path(datasheet_document(sheet), PathExpr::parse(path));
}

RuleResult evaluate_rule(const json& doc, const Rule& rule) {
    const auto values = resolve_path(doc, rule.path);
    RuleResult result;
    result.id = rule.id;
    result.message = rule.message;
    for (const auto& v : values) result.matchedValues.push_back(value_text(v));

    switch (rule.check.kind) {
        case CheckKind::Exists: result.passed = !values.empty(); break;
        case CheckKind::NotExists: result.passed = values.empty(); break;
        case CheckKind::MinCount: result.passed = values.size() >= rule.check.minCount; break;
        default: {
            auto ok = [&](const json& v) { return satisfies(rule.check, v); };
            result.passed = rule.quantifier == Quantifier::Any ? std::any_of(values.begin(), values.end(), ok)
                                                               : std::all_of(values.begin(), values.end(), ok);
        }
    }
    if (!result.passed) result.action = rule.onFail == FailAction::Reject ? RuleAction::Reject : RuleAction::Review;
    return result;
}

Decision aggregate(const std::vector<RuleResult>& results) noexcept {
    Decision d = Decision::Accept;
    for (const auto& r : results) {
        if (r.action == RuleAction::Reject) return Decision::Reject;
        if (r.action == RuleAction::Review) d = Decision::Review;
    }
    return d;
}

Verdict evaluate_policy(const Datasheet& sheet, const Policy& policy) {
    const json doc = datasheet_document(sheet);
    Verdict v;
    v.ruleResults.reserve(policy.rules.size());
    for (const auto& rule : policy.rules) v.ruleResults.push_back(evaluate_rule(doc, rule));
    v.decision = aggregate(v.ruleResults);
    return v;
}

ordered_json to_ordered_json(const Policy& policy) {
    ordered_json out = ordered_json::object();
    out["name"] = policy.name;
    out["version"] = policy.version;
    ordered_json rules = ordered_json::array();
    for (const auto& r : policy.rules) {
        ordered_json rule = ordered_json::object();
        rule["id"] = r.id;
        rule["description"] = r.description;
        rule["path"] = r.path.text();
        if (r.check.kind == CheckKind::Exists || r.check.kind == CheckKind::NotExists) {
            rule["check"] = to_string(r.check.kind);
        } else {
            ordered_json check = ordered_json::object();
            check[std::string(to_string(r.check.kind))] = to_ordered(r.check.operand);
            rule["check"] = std::move(check);
        }
        rule["quantifier"] = to_string(r.quantifier);
        rule["onFail"] = to_string(r.onFail);
        rule["message"] = r.message;
        rules.push_back(std::move(rule));
    }
    out["rules"] = std::move(rules);
    return out;
}

ordered_json to_ordered_json(const Verdict& verdict) {
    ordered_json out = ordered_json::object();
    out["decision"] = to_string(verdict.decision);
    ordered_json results = ordered_json::array();
    for (const auto& r : verdict.ruleResults) {
        ordered_json item = ordered_json::object();
        item["id"] = r.id;
        item["passed"] = r.passed;
        item["action"] = to_string(r.action);
        item["matchedValues"] = r.matchedValues;
        item["message"] = r.message;
        results.push_back(std::move(item));
    }
    out["ruleResults"] = std::move(results);
    return out;
}

std::string serialize_policy(const Policy& policy) { return canonical_text(to_ordered_json(policy)); }
std::string serialize_verdict(const Verdict& verdict) { return canonical_text(to_ordered_json(verdict)); }

}  // namespace ods
