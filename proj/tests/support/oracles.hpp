#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ods/inference.hpp"

// Reference implementations the library is checked against. None of them call
// into the code under test.
namespace odstest {

// Cell types

/// Regex-driven classifier written straight from the grammar.
ods::CellType oracle_classify(std::string_view raw, const std::vector<std::string>& missing);

/// Partial order of the type lattice, as an explicit table.
bool lattice_leq(ods::CellType a, ods::CellType b);

/// Least upper bound found by searching every candidate type.
ods::CellType oracle_join(ods::CellType a, ods::CellType b);

/// Column type: classify every cell, fold with oracle_join starting at Missing.
ods::CellType oracle_column_type(const std::vector<std::string>& cells, const std::vector<std::string>& missing);

/// Header rule: every cell a string, no two equal.
bool oracle_is_header(const std::vector<std::string>& row, const std::vector<std::string>& missing);

// Bytes

std::string oracle_sha256_hex(std::string_view bytes);  // libsodium
bool oracle_utf8_valid(std::string_view bytes);         // iconv

// Completeness

struct Fraction {
    int populated = 0;
    int total = 0;
    double value() const { return total == 0 ? 0.0 : static_cast<double>(populated) / total; }
};

/// Recommended-field counts per RAI section, read from a datasheet's JSON.
std::map<std::string, Fraction> oracle_completeness(const nlohmann::json& doc);

// Policies

struct FlatValue {
    std::vector<std::string> tokens;
    std::vector<bool> fromArray;  // tokens[i] indexes an array position
    nlohmann::json value;
};

/// Every (pointer, value) pair of `doc`, in document order, root included.
std::vector<FlatValue> flatten(const nlohmann::json& doc);

struct OracleVerdict {
    std::string decision;
    std::vector<bool> passed;  // per rule, policy order
};

/// Evaluates a policy given as raw JSON by scanning every flattened value.
OracleVerdict oracle_evaluate(const nlohmann::json& doc, const nlohmann::json& policy);

}  // namespace odstest
