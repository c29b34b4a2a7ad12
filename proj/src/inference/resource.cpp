#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "ods/error.hpp"
#include "ods/inference.hpp"

namespace ods {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string_view base_name(std::string_view path) {
    const auto slash = path.find_last_of("/\\");
    return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

ResourceFormat format_from_name(std::string_view file_name) {
    const std::string_view base = base_name(file_name);
    const auto dot = base.rfind('.');
    if (dot == std::string_view::npos) return ResourceFormat::Other;
    const std::string ext = lowercase(base.substr(dot + 1));
    if (ext == "csv") return ResourceFormat::Csv;
    if (ext == "tsv") return ResourceFormat::Tsv;
    if (ext == "json") return ResourceFormat::Json;
    if (ext == "jsonl") return ResourceFormat::Jsonl;
    return ResourceFormat::Other;
}

std::string_view media_type(ResourceFormat f) {
    switch (f) {
        case ResourceFormat::Csv: return "text/csv";
        case ResourceFormat::Tsv: return "text/tab-separated-values";
        case ResourceFormat::Json: return "application/json";
        case ResourceFormat::Jsonl: return "application/jsonl";
        case ResourceFormat::Other: break;
    }
    return "application/octet-stream";
}

// C0 controls other than TAB, LF, VT, FF, CR mark binary content.
bool looks_binary(std::string_view text) {
    return std::any_of(text.begin(), text.end(), [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return u < 0x09 || (u > 0x0D && u < 0x20);
    });
}

// First `lines` physical lines of `text`.
std::string_view head_lines(std::string_view text, std::size_t lines) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < lines; ++i) {
        pos = text.find('\n', pos);
        if (pos == std::string_view::npos) return text;
        ++pos;
    }
    return text.substr(0, pos);
}

/// Per-key accumulator for JSON records: scalar cells go through the cell
/// lattice; nested values are tracked separately.
struct JsonColumn {
    std::string name;
    CellType scalar = CellType::Missing;
    bool objects = false;
    bool arrays = false;
    std::vector<std::string> samples;
    std::unordered_set<std::string> seen;

    void add(const nlohmann::ordered_json& v, const InferenceConfig& cfg) {
        if (v.is_null()) return;
        std::string text;
        if (v.is_structured()) {
            (v.is_object() ? objects : arrays) = true;
            text = v.dump();
        } else {
            text = v.is_string() ? v.get<std::string>() : v.dump();
            const CellType t = classify_cell(text, cfg);
            scalar = join_types(scalar, t);
            if (t == CellType::Missing) return;
        }
        if (samples.size() < cfg.maxSampleValues && seen.insert(text).second) samples.push_back(std::move(text));
    }

    FieldType type() const {
        const bool has_scalar = scalar != CellType::Missing;
        if (objects && !arrays && !has_scalar) return FieldType::Object;
        if (arrays && !objects && !has_scalar) return FieldType::Array;
        if (objects || arrays) return FieldType::String;
        return to_field_type(scalar);
    }
};

std::optional<TableSchema> infer_json(std::string_view text, bool lines, const InferenceConfig& cfg,
                                      std::vector<std::string>& warnings) {
    std::vector<nlohmann::ordered_json> records;
    try {
        if (lines) {
            std::size_t start = 0;
            while (start < text.size()) {
                auto end = text.find('\n', start);
                if (end == std::string_view::npos) end = text.size();
                const std::string_view line = text.substr(start, end - start);
                if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
                    records.push_back(nlohmann::ordered_json::parse(line));
                }
                start = end + 1;
            }
        } else {
            auto doc = nlohmann::ordered_json::parse(text);
            if (!doc.is_array()) {
                warnings.emplace_back("top-level JSON value is not an array of objects; schema omitted");
                return std::nullopt;
            }
            for (auto& item : doc) records.push_back(std::move(item));
        }
    } catch (const nlohmann::json::parse_error& e) {
        warnings.push_back(std::string("content is not valid JSON (") + e.what() + "); schema omitted");
        return std::nullopt;
    }
    if (records.empty()) {
        warnings.emplace_back("no records found; schema omitted");
        return std::nullopt;
    }

    std::vector<JsonColumn> columns;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].is_object()) {
            warnings.push_back("record " + std::to_string(i + 1) + " is not an object; schema omitted");
            return std::nullopt;
        }
        for (const auto& [key, value] : records[i].items()) {
            auto it = std::find_if(columns.begin(), columns.end(), [&](const JsonColumn& c) { return c.name == key; });
            if (it == columns.end()) {
                it = columns.insert(columns.end(), JsonColumn{});
                it->name = key;
            }
            it->add(value, cfg);
        }
    }

    TableSchema schema;
    schema.missingValues = cfg.missingValues;
    for (auto& c : columns) {
        Field f;
        f.name = c.name;
        f.type = c.type();
        f.sampleValues = std::move(c.samples);
        schema.fields.push_back(std::move(f));
    }
    return schema;
}

}  // namespace

std::string slug_from_file_name(std::string_view file_name) {
    std::string_view stem = base_name(file_name);
    if (const auto dot = stem.rfind('.'); dot != std::string_view::npos && dot > 0) stem = stem.substr(0, dot);
    std::string slug;
    for (char c : lowercase(stem)) {
        // UTF-8 continuation bytes belong to the character already replaced.
        if ((static_cast<unsigned char>(c) & 0xC0) == 0x80) continue;
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        slug += ok ? c : '-';
    }
    auto alnum = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
    const auto first = std::find_if(slug.begin(), slug.end(), alnum);
    const auto last = std::find_if(slug.rbegin(), slug.rend(), alnum).base();
    if (first >= last) return "resource";
    return std::string(first, last);
}

ResourceInference infer_resource(std::string_view file_name, std::string_view bytes, const InferenceConfig& cfg) {
    cfg.check();
    if (bytes.size() > cfg.maxBytes) {
        throw InvalidArgument("oversize", "file is " + std::to_string(bytes.size()) + " bytes; the limit is " +
                                              std::to_string(cfg.maxBytes));
    }
    ResourceInference out;
    Resource& r = out.resource;
    r.name = slug_from_file_name(file_name);
    r.path = std::string(file_name);
    r.format = format_from_name(file_name);
    r.mediatype = std::string(media_type(r.format));
    r.bytes = static_cast<std::int64_t>(bytes.size());
    r.hash = "sha256:" + sha256_hex(bytes);

    const DetectedEncoding encoding = detect_encoding(bytes);
    r.encoding = encoding.name;
    if (encoding.warning) out.warnings.push_back(*encoding.warning);
    if (r.format == ResourceFormat::Other) return out;

    const std::string text = decode_to_utf8(bytes, encoding);
    if (looks_binary(text)) throw InvalidArgument("undecodable", "undecodable: content looks binary");

    switch (r.format) {
        case ResourceFormat::Csv:
        case ResourceFormat::Tsv: {
            try {
                Dialect dialect = sniff_dialect(head_lines(text, cfg.sniffLines), cfg);
                if (r.format == ResourceFormat::Tsv && dialect.delimiter != '\t') {
                    dialect.delimiter = '\t';
                    const auto first = parse_delimited(text, '\t', dialect.quoteChar, 1);
                    dialect.hasHeader = !first.empty() && looks_like_header(first.front(), cfg);
                }
                const auto rows = parse_delimited(text, dialect.delimiter, dialect.quoteChar);
                auto table = infer_table_schema(rows, dialect, cfg);
                r.schema = std::move(table.schema);
                out.warnings.insert(out.warnings.end(), table.warnings.begin(), table.warnings.end());
            } catch (const InvalidArgument& e) {
                if (e.code() != "no-data" && e.code() != "no-rows") throw;
                out.warnings.push_back(std::string(e.what()) + "; schema omitted");
            }
            break;
        }
        case ResourceFormat::Json:
        case ResourceFormat::Jsonl:
            r.schema = infer_json(text, r.format == ResourceFormat::Jsonl, cfg, out.warnings);
            break;
        case ResourceFormat::Other:
            break;
    }
    return out;
}

}  // namespace ods
