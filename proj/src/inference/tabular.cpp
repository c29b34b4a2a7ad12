#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "ods/error.hpp"
#include "ods/inference.hpp"

namespace ods {

std::string_view to_string(CellType t) noexcept {
    switch (t) {
        case CellType::Missing: return "missing";
        case CellType::Boolean: return "boolean";
        case CellType::Integer: return "integer";
        case CellType::Number: return "number";
        case CellType::Date: return "date";
        case CellType::Datetime: return "datetime";
        case CellType::Time: return "time";
        case CellType::String: return "string";
    }
    return "string";
}

FieldType to_field_type(CellType t) noexcept {
    switch (t) {
        case CellType::Missing: return FieldType::Any;
        case CellType::Boolean: return FieldType::Boolean;
        case CellType::Integer: return FieldType::Integer;
        case CellType::Number: return FieldType::Number;
        case CellType::Date: return FieldType::Date;
        case CellType::Datetime: return FieldType::Datetime;
        case CellType::Time: return FieldType::Time;
        case CellType::String: return FieldType::String;
    }
    return FieldType::String;
}

void InferenceConfig::check() const {
    if (maxSampleValues < 1) throw InvalidArgument("bad-config", "maxSampleValues must be at least 1");
    if (sniffLines < 2) throw InvalidArgument("bad-config", "sniffLines must be at least 2");
}

std::vector<Row> parse_delimited(std::string_view text, char delimiter, char quote, std::size_t max_records) {
    std::vector<Row> rows;
    Row row;
    std::string cell;
    bool quoted = false;      // inside a quoted section
    bool cell_started = false;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        cell_started = false;
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
    };

    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n && rows.size() < max_records; ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == quote) {
                if (i + 1 < n && text[i + 1] == quote) {
                    cell += quote;
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        if (c == delimiter) {
            end_cell();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
            if (cell_started || !row.empty()) end_row();
        } else if (c == quote && !cell_started) {
            quoted = true;
            cell_started = true;
        } else {
            cell += c;
            cell_started = true;
        }
    }
    if (rows.size() < max_records && (cell_started || !row.empty())) end_row();
    return rows;
}

namespace {

struct DelimiterScore {
    double consistency = 0.0;
    std::size_t modal_columns = 0;
};

DelimiterScore score_delimiter(std::string_view sample, char delimiter, std::size_t max_records) {
    const auto rows = parse_delimited(sample, delimiter, '"', max_records);
    if (rows.empty()) return {};
    std::map<std::size_t, std::size_t> counts;
    for (const auto& r : rows) ++counts[r.size()];
    std::size_t modal = 0;
    std::size_t modal_freq = 0;
    for (const auto& [columns, freq] : counts) {
        if (freq >= modal_freq) {  // ties go to the larger column count
            modal = columns;
            modal_freq = freq;
        }
    }
    return {static_cast<double>(modal_freq) / static_cast<double>(rows.size()), modal};
}

}  // namespace

bool looks_like_header(const Row& first, const InferenceConfig& cfg) {
    std::set<std::string_view> seen;
    for (const auto& cell : first) {
        if (classify_cell(cell, cfg) != CellType::String) return false;
        if (!seen.insert(cell).second) return false;
    }
    return !first.empty();
}

Dialect sniff_dialect(std::string_view sample, const InferenceConfig& cfg) {
    if (parse_delimited(sample, ',', '"', 1).empty()) throw InvalidArgument("no-data", "no data");

    Dialect best;
    DelimiterScore best_score{-1.0, 0};
    for (char candidate : kCandidateDelimiters) {
        const auto s = score_delimiter(sample, candidate, cfg.sniffLines);
        if (s.consistency > best_score.consistency ||
            (s.consistency == best_score.consistency && s.modal_columns > best_score.modal_columns)) {
            best_score = s;
            best.delimiter = candidate;
        }
    }
    const auto first = parse_delimited(sample, best.delimiter, best.quoteChar, 1);
    best.hasHeader = looks_like_header(first.front(), cfg);
    return best;
}

namespace {

constexpr bool digit(char c) noexcept { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

bool iequals(std::string_view a, std::string_view b) noexcept {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        char x = a[i];
        if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
        if (x != b[i]) return false;
    }
    return true;
}

// Reads exactly `len` digits at `pos`; -1 if any is not a digit.
int fixed_digits(std::string_view s, std::size_t pos, std::size_t len) noexcept {
    if (pos + len > s.size()) return -1;
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!digit(s[i])) return -1;
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

bool is_integer_text(std::string_view s) noexcept {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), digit)) return false;
    if (digits.size() > 1 && digits.front() == '0') return false;
    if (digits == "0") return s == "0" || s == "-0";
    return true;
}

// [+-]? (d+ ('.' d*)? | '.' d+) ([eE] [+-]? d+)?, with a '.' or exponent present.
bool is_number_text(std::string_view s) noexcept {
    std::size_t i = 0;
    const std::size_t n = s.size();
    if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t int_digits = 0;
    while (i < n && digit(s[i])) ++i, ++int_digits;
    bool point = false;
    std::size_t frac_digits = 0;
    if (i < n && s[i] == '.') {
        point = true;
        ++i;
        while (i < n && digit(s[i])) ++i, ++frac_digits;
    }
    if (int_digits == 0 && frac_digits == 0) return false;
    bool exponent = false;
    if (i < n && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t exp_digits = 0;
        while (i < n && digit(s[i])) ++i, ++exp_digits;
        if (exp_digits == 0) return false;
        exponent = true;
    }
    return i == n && (point || exponent);
}

bool is_time_hms(std::string_view s, std::size_t pos, bool seconds, int max_second) noexcept {
    const int h = fixed_digits(s, pos, 2);
    if (h < 0 || h > 23 || pos + 2 >= s.size() || s[pos + 2] != ':') return false;
    const int m = fixed_digits(s, pos + 3, 2);
    if (m < 0 || m > 59) return false;
    if (!seconds) return true;
    if (pos + 5 >= s.size() || s[pos + 5] != ':') return false;
    const int sec = fixed_digits(s, pos + 6, 2);
    return sec >= 0 && sec <= max_second;
}

bool is_time_text(std::string_view s) noexcept {
    if (s.size() == 5) return is_time_hms(s, 0, false, 59);
    if (s.size() == 8) return is_time_hms(s, 0, true, 59);
    return false;
}

// RFC 3339 date-time: full-date ("T" / "t" / " ") HH:MM:SS [.frac] ("Z" / "z" / (+|-)HH:MM)
bool is_datetime_text(std::string_view s) noexcept {
    if (s.size() < 20 || !is_iso_date(s.substr(0, 10))) return false;
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return false;
    if (!is_time_hms(s, 11, true, 60)) return false;
    std::size_t i = 19;
    if (s[i] == '.') {
        ++i;
        const std::size_t start = i;
        while (i < s.size() && digit(s[i])) ++i;
        if (i == start) return false;
    }
    if (i >= s.size()) return false;
    if (s[i] == 'Z' || s[i] == 'z') return i + 1 == s.size();
    if (s[i] != '+' && s[i] != '-') return false;
    if (s.size() != i + 6) return false;
    const int oh = fixed_digits(s, i + 1, 2);
    const int om = fixed_digits(s, i + 4, 2);
    return s[i + 3] == ':' && oh >= 0 && oh <= 23 && om >= 0 && om <= 59;
}

}  // namespace

CellType classify_cell(std::string_view cell, const InferenceConfig& cfg) {
    const std::string_view v = trim(cell);
    for (const auto& missing : cfg.missingValues) {
        if (v == missing) return CellType::Missing;
    }
    if (iequals(v, "true") || iequals(v, "false")) return CellType::Boolean;
    if (is_integer_text(v)) return CellType::Integer;
    if (is_number_text(v)) return CellType::Number;
    if (is_iso_date(v)) return CellType::Date;
    if (is_datetime_text(v)) return CellType::Datetime;
    if (is_time_text(v)) return CellType::Time;
    return CellType::String;
}

TableInference infer_table_schema(std::span<const Row> rows, const Dialect& dialect, const InferenceConfig& cfg) {
    cfg.check();
    const std::size_t first_data = dialect.hasHeader ? 1 : 0;
    if (rows.size() <= first_data) throw InvalidArgument("no-rows", "no rows");

    std::size_t columns = 0;
    for (const auto& r : rows) columns = std::max(columns, r.size());

    TableInference out;
    out.schema.missingValues = cfg.missingValues;
    if (dialect.hasHeader && rows.front().size() != columns) {
        out.warnings.push_back("header has " + std::to_string(rows.front().size()) + " cells, expected " +
                               std::to_string(columns) + "; missing names generated");
    }

    std::set<std::string> used_names;
    for (std::size_t c = 0; c < columns; ++c) {
        std::string name;
        if (dialect.hasHeader && c < rows.front().size()) name = std::string(trim(rows.front()[c]));
        if (name.empty()) name = "field_" + std::to_string(c + 1);
        if (used_names.contains(name)) {
            std::size_t k = 2;
            while (used_names.contains(name + "_" + std::to_string(k))) ++k;
            name += "_" + std::to_string(k);
        }
        used_names.insert(name);
        Field f;
        f.name = std::move(name);
        out.schema.fields.push_back(std::move(f));
    }

    std::vector<CellType> types(columns, CellType::Missing);
    std::vector<std::unordered_set<std::string>> seen(columns);
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const Row& row = rows[r];
        if (row.size() != columns) {
            out.warnings.push_back("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                                   " cells, expected " + std::to_string(columns) + "; padded as missing");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            const CellType t = classify_cell(row[c], cfg);
            types[c] = join_types(types[c], t);
            if (t == CellType::Missing) continue;
            auto& samples = out.schema.fields[c].sampleValues;
            if (samples.size() < cfg.maxSampleValues && seen[c].insert(row[c]).second) samples.push_back(row[c]);
        }
    }
    for (std::size_t c = 0; c < columns; ++c) out.schema.fields[c].type = to_field_type(types[c]);
    return out;
}

}  // namespace ods
