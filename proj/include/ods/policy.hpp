#pragma once

#include <cstdint>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ods/model.hpp"

// Declarative screening rules evaluated against a datasheet, producing an
// accept / review / reject verdict.
namespace ods {

enum class CheckKind { Exists, NotExists, Equals, OneOf, NotOneOf, Matches, MinCount };
enum class Quantifier { Any, All };
enum class FailAction { Review, Reject };
enum class Decision { Accept, Review, Reject };
enum class RuleAction { None, Review, Reject };

std::string_view to_string(CheckKind v) noexcept;
std::string_view to_string(Quantifier v) noexcept;
std::string_view to_string(FailAction v) noexcept;
std::string_view to_string(Decision v) noexcept;
std::string_view to_string(RuleAction v) noexcept;

/// A parsed path expression: JSON Pointer tokens, "*" expanding over array
/// positions.
class PathExpr {
public:
    /// Throws ParseError for anything that is not "" or "/"-prefixed, or that
    /// holds a bad "~" escape.
    static PathExpr parse(std::string_view text);

    const std::string& text() const noexcept { return text_; }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }
    bool has_wildcard() const noexcept;

private:
    std::string text_;
    std::vector<std::string> tokens_;
};

struct Check {
    CheckKind kind = CheckKind::Exists;
    nlohmann::json operand;                  // equals value, one-of list, regex source
    std::uint64_t minCount = 0;
    std::shared_ptr<const std::regex> regex; // Matches only
};

struct Rule {
    std::string id;
    std::string description;
    PathExpr path;
    Check check;
    Quantifier quantifier = Quantifier::Any;
    FailAction onFail = FailAction::Review;
    std::string message;
};

struct Policy {
    std::string name;
    std::string version;
    std::vector<Rule> rules;
};

struct RuleResult {
    std::string id;
    bool passed = false;
    RuleAction action = RuleAction::None;
    std::vector<std::string> matchedValues;
    std::string message;
    bool operator==(const RuleResult&) const = default;
};

struct Verdict {
    Decision decision = Decision::Accept;
    std::vector<RuleResult> ruleResults;
    bool operator==(const Verdict&) const = default;
};

/// Throws ParseError on malformed JSON, an unknown check, a bad regex, a bad
/// path or a duplicate rule id.
Policy parse_policy(std::string_view json_text);
Policy policy_from_json(const nlohmann::json& doc);

/// Canonical datasheet document as a plain JSON value; paths resolve over it.
nlohmann::json datasheet_document(const Datasheet& sheet);

/// All values addressed by `path`; missing segments give an empty list.
std::vector<nlohmann::json> resolve_path(const nlohmann::json& doc, const PathExpr& path);
std::vector<nlohmann::json> resolve_path(const Datasheet& sheet, std::string_view path);

RuleResult evaluate_rule(const nlohmann::json& doc, const Rule& rule);
Verdict evaluate_policy(const Datasheet& sheet, const Policy& policy);

/// Reject beats review beats accept.
Decision aggregate(const std::vector<RuleResult>& results) noexcept;

nlohmann::ordered_json to_ordered_json(const Policy& policy);
nlohmann::ordered_json to_ordered_json(const Verdict& verdict);
std::string serialize_policy(const Policy& policy);
std::string serialize_verdict(const Verdict& verdict);

}  // namespace ods
