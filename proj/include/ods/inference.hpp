#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ods/model.hpp"

// Structural metadata extraction from raw data files. Byte payloads are passed
// as std::string_view over the raw bytes.
namespace ods {

/// Cell classification used while inferring a column; `Missing` never reaches
/// a Field.
enum class CellType { Missing, Boolean, Integer, Number, Date, Datetime, Time, String };

inline constexpr std::array<CellType, 8> kAllCellTypes{
    CellType::Missing, CellType::Boolean, CellType::Integer, CellType::Number,
    CellType::Date,    CellType::Datetime, CellType::Time,   CellType::String,
};

std::string_view to_string(CellType t) noexcept;

/// Missing maps to FieldType::Any (an all-missing column).
FieldType to_field_type(CellType t) noexcept;

inline constexpr std::array<char, 4> kCandidateDelimiters{',', ';', '\t', '|'};

struct Dialect {
    char delimiter = ',';
    char quoteChar = '"';
    bool hasHeader = true;
    bool operator==(const Dialect&) const = default;
};

struct InferenceConfig {
    std::size_t maxSampleValues = 5;
    std::size_t sniffLines = 64;
    std::vector<std::string> missingValues{"", "NA", "N/A", "n/a", "null", "NULL", "-"};
    std::uint64_t maxBytes = 100ull * 1024 * 1024;

    /// Throws InvalidArgument when a knob is out of range.
    void check() const;
};

struct DetectedEncoding {
    std::string name;          // "utf-8", "utf-16le", "utf-16be" or "latin-1"
    std::size_t bomLength = 0; // bytes to skip before decoding
    std::optional<std::string> warning;
};

DetectedEncoding detect_encoding(std::string_view bytes);

/// Strict UTF-8 check: no overlongs, no surrogates, nothing above U+10FFFF.
bool is_valid_utf8(std::string_view bytes) noexcept;

/// Decodes `bytes` (BOM included) into UTF-8 text. Throws
/// InvalidArgument("undecodable") for malformed UTF-16.
std::string decode_to_utf8(std::string_view bytes, const DetectedEncoding& encoding);

using Row = std::vector<std::string>;

/// Splits delimited text into records. Quoted cells may contain delimiters,
/// line breaks and doubled quotes; blank lines are skipped.
std::vector<Row> parse_delimited(std::string_view text, char delimiter, char quote = '"',
                                 std::size_t max_records = SIZE_MAX);

/// Picks the candidate delimiter whose column counts are most consistent.
/// Throws InvalidArgument("no-data") on an empty sample.
Dialect sniff_dialect(std::string_view sample, const InferenceConfig& cfg);

/// True when every cell of `first` classifies as String and no two are equal.
bool looks_like_header(const Row& first, const InferenceConfig& cfg);

CellType classify_cell(std::string_view cell, const InferenceConfig& cfg);

/// Lattice join: Missing is the identity, Integer and Number meet at Number,
/// any other distinct pair goes to String.
constexpr CellType join_types(CellType a, CellType b) noexcept {
    if (a == b || b == CellType::Missing) return a;
    if (a == CellType::Missing) return b;
    if ((a == CellType::Integer && b == CellType::Number) || (a == CellType::Number && b == CellType::Integer)) {
        return CellType::Number;
    }
    return CellType::String;
}

struct TableInference {
    TableSchema schema;
    std::vector<std::string> warnings;
};

/// `rows` includes the header row when `dialect.hasHeader`. Throws
/// InvalidArgument("no-rows") when there is no data row.
TableInference infer_table_schema(std::span<const Row> rows, const Dialect& dialect, const InferenceConfig& cfg);

struct ResourceInference {
    Resource resource;
    std::vector<std::string> warnings;
};

/// Full per-file inference: format, encoding, size, hash and schema.
/// Throws InvalidArgument with code "oversize" or "undecodable".
ResourceInference infer_resource(std::string_view file_name, std::string_view bytes, const InferenceConfig& cfg);

/// "My Data.CSV" -> "my-data".
std::string slug_from_file_name(std::string_view file_name);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

}  // namespace ods
