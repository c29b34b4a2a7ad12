#include "tables.hpp"

#include <cstdio>

#include "oracles.hpp"

namespace odstest {

namespace {

enum class Kind { Integer, Number, Boolean, Date, Datetime, Time, Text, Tricky };

std::string two(int v) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02d", v);
    return buf;
}

std::string cell_of(Rng& rng, Kind kind) {
    switch (kind) {
        case Kind::Integer: {
            const std::string n = std::to_string(uniform(rng, -5000, 5000));
            return chance(rng, 0.1) ? "+" + std::to_string(uniform(rng, 1, 99)) : n;
        }
        case Kind::Number: {
            static const std::vector<std::string> forms{"3.14", "-0.5", "1e5", "2.5E-3", ".75", "10.", "+6.02e23", "0.0"};
            if (chance(rng, 0.5)) return pick(rng, forms);
            return std::to_string(uniform(rng, -999, 999)) + "." + std::to_string(uniform(rng, 0, 99));
        }
        case Kind::Boolean: {
            static const std::vector<std::string> forms{"true", "false", "TRUE", "False", "tRuE"};
            return pick(rng, forms);
        }
        case Kind::Date: return std::to_string(uniform(rng, 1970, 2030)) + "-" + two(uniform(rng, 1, 12)) + "-" + two(uniform(rng, 1, 28));
        case Kind::Datetime: {
            static const std::vector<std::string> zones{"Z", "+02:00", "-05:30", "z"};
            static const std::vector<std::string> seps{"T", " ", "t"};
            std::string s = std::to_string(uniform(rng, 1970, 2030)) + "-" + two(uniform(rng, 1, 12)) + "-" +
                            two(uniform(rng, 1, 28)) + pick(rng, seps) + two(uniform(rng, 0, 23)) + ":" +
                            two(uniform(rng, 0, 59)) + ":" + two(uniform(rng, 0, 59));
            if (chance(rng, 0.3)) s += "." + std::to_string(uniform(rng, 0, 999));
            return s + pick(rng, zones);
        }
        case Kind::Time: {
            std::string s = two(uniform(rng, 0, 23)) + ":" + two(uniform(rng, 0, 59));
            if (chance(rng, 0.5)) s += ":" + two(uniform(rng, 0, 59));
            return s;
        }
        case Kind::Text: {
            static const std::vector<std::string> words{"alpha", "Beta", "gamma ray", "x", "O'Brien", "naïve",
                                                        "a,b", "c;d", "e|f", "tab\tbed", "say \"hi\"", "two\nlines",
                                                        "north", "south-east", "id-7", "München"};
            return pick(rng, words);
        }
        case Kind::Tricky: {
            static const std::vector<std::string> forms{
                "007",        "-0",         "0",          "+0",        "2023-02-29", "2024-02-29", "2023-13-01",
                "24:00",      "23:59:60",   "12:5",       " 42 ",      "\t7",        "1e",         "1.2.3",
                "2023-05-01T10:00:00",      "2023-05-01T24:00:00Z",   "2016-12-31T23:59:60Z",   "yes",
                "1,000",      "NaN",        "inf",        "0x1F",      "- 1",        "--1",
            };
            return pick(rng, forms);
        }
    }
    return {};
}

bool needs_quotes(const std::string& cell, char delimiter) {
    if (cell.find_first_of("\"\n\r") != std::string::npos || cell.find(delimiter) != std::string::npos) return true;
    for (char d : ods::kCandidateDelimiters) {
        if (cell.find(d) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

std::string write_record(const std::vector<std::string>& cells, char delimiter, bool quote_all) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += delimiter;
        const std::string& c = cells[i];
        if (quote_all || needs_quotes(c, delimiter)) {
            line += '"';
            for (char ch : c) {
                if (ch == '"') line += '"';
                line += ch;
            }
            line += '"';
        } else {
            line += c;
        }
    }
    return line;
}

GeneratedTable random_table(Rng& rng, const std::vector<std::string>& missing) {
    static const std::vector<Kind> kKinds{Kind::Integer, Kind::Number, Kind::Boolean, Kind::Date,
                                          Kind::Datetime, Kind::Time,  Kind::Text,    Kind::Tricky};
    while (true) {
        GeneratedTable t;
        t.delimiter = pick(rng, std::vector<char>(ods::kCandidateDelimiters.begin(), ods::kCandidateDelimiters.end()));
        t.header = chance(rng, 0.6);
        const int cols = uniform(rng, 2, 7);
        const int rows = uniform(rng, 1, 40);
        const bool quote_all = chance(rng, 0.25);
        const bool crlf = chance(rng, 0.2);

        std::vector<Kind> kinds;
        for (int c = 0; c < cols; ++c) kinds.push_back(pick(rng, kKinds));
        const double missing_rate = chance(rng, 0.3) ? 0.0 : 0.2;

        for (int r = 0; r < rows; ++r) {
            std::vector<std::string> row;
            for (int c = 0; c < cols; ++c) {
                if (chance(rng, missing_rate)) {
                    row.push_back(pick(rng, missing));
                } else if (chance(rng, 0.08)) {
                    row.push_back(cell_of(rng, pick(rng, kKinds)));
                } else {
                    row.push_back(cell_of(rng, kinds[c]));
                }
            }
            t.rows.push_back(std::move(row));
        }
        if (t.header) {
            for (int c = 0; c < cols; ++c) t.names.push_back("col_" + std::string(1, static_cast<char>('a' + c)));
        } else if (oracle_is_header(t.rows.front(), missing)) {
            continue;
        }

        const std::string eol = crlf ? "\r\n" : "\n";
        if (t.header) t.text += write_record(t.names, t.delimiter, quote_all) + eol;
        for (const auto& row : t.rows) t.text += write_record(row, t.delimiter, quote_all) + eol;
        if (chance(rng, 0.2)) t.text.erase(t.text.size() - eol.size());
        return t;
    }
}

std::vector<CorpusFile> dialect_corpus(std::size_t count) {
    static const std::vector<std::string> kNames{"id", "city", "country", "population", "area", "founded", "mayor"};
    static const std::vector<std::string> kCities{"Lisbon", "Oslo", "Quito", "Hanoi", "Accra", "Lima", "Perth"};
    std::vector<CorpusFile> corpus;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t combo = i % 16;
        CorpusFile f;
        f.delimiter = ods::kCandidateDelimiters[combo % 4];
        f.quoted = (combo / 4) % 2 == 1;
        f.header = combo / 8 == 0;
        const std::size_t cols = 2 + i % 5;
        const std::size_t rows = 3 + (i * 7) % 11;

        std::vector<std::vector<std::string>> records;
        if (f.header) records.emplace_back(kNames.begin(), kNames.begin() + static_cast<long>(cols));
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<std::string> rec;
            rec.push_back(std::to_string(r + 1));
            for (std::size_t c = 1; c < cols; ++c) {
                std::string cell = kCities[(r + c + i) % kCities.size()];
                if (f.quoted && (r + c) % 3 == 0) cell += ", " + std::string(1, ods::kCandidateDelimiters[(c + 1) % 4]) + " annex";
                if (c == 2) cell = std::to_string((r + 3) * 1000 + i);
                rec.push_back(cell);
            }
            records.push_back(std::move(rec));
        }

        char name[64];
        std::snprintf(name, sizeof name, "dialect-%02zu-%s-%s-%s.csv", i,
                      f.delimiter == '\t' ? "tab" : f.delimiter == ',' ? "comma" : f.delimiter == ';' ? "semi" : "pipe",
                      f.quoted ? "quoted" : "plain", f.header ? "header" : "noheader");
        f.name = name;
        for (const auto& rec : records) f.text += write_record(rec, f.delimiter, f.quoted) + "\n";
        corpus.push_back(std::move(f));
    }
    return corpus;
}

}  // namespace odstest
