#include <cstdint>

#include "ods/error.hpp"
#include "ods/inference.hpp"

namespace ods {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

std::string decode_utf16(std::string_view bytes, bool little_endian) {
    if (bytes.size() % 2 != 0) {
        throw InvalidArgument("undecodable", "UTF-16 content has an odd number of bytes");
    }
    auto unit_at = [&](std::size_t i) -> std::uint32_t {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        const auto b1 = static_cast<unsigned char>(bytes[i + 1]);
        return little_endian ? (b1 << 8 | b0) : (b0 << 8 | b1);
    };
    std::string out;
    out.reserve(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); i += 2) {
        std::uint32_t unit = unit_at(i);
        if (unit >= 0xD800 && unit <= 0xDBFF) {
            if (i + 3 >= bytes.size()) {
                throw InvalidArgument("undecodable", "truncated UTF-16 surrogate pair");
            }
            const std::uint32_t low = unit_at(i + 2);
            if (low < 0xDC00 || low > 0xDFFF) {
                throw InvalidArgument("undecodable", "unpaired UTF-16 surrogate");
            }
            unit = 0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00);
            i += 2;
        } else if (unit >= 0xDC00 && unit <= 0xDFFF) {
            throw InvalidArgument("undecodable", "unpaired UTF-16 surrogate");
        }
        append_utf8(out, unit);
    }
    return out;
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) noexcept {
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char c = p[i];
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        std::uint32_t cp = 0;
        std::uint32_t min = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2, cp = c & 0x1F, min = 0x80;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3, cp = c & 0x0F, min = 0x800;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4, cp = c & 0x07, min = 0x10000;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

DetectedEncoding detect_encoding(std::string_view bytes) {
    if (bytes.starts_with("\xEF\xBB\xBF")) return {"utf-8", 3, std::nullopt};
    if (bytes.starts_with("\xFF\xFE")) return {"utf-16le", 2, std::nullopt};
    if (bytes.starts_with("\xFE\xFF")) return {"utf-16be", 2, std::nullopt};
    if (is_valid_utf8(bytes)) return {"utf-8", 0, std::nullopt};
    return {"latin-1", 0, "content is not valid UTF-8; decoded as latin-1"};
}

std::string decode_to_utf8(std::string_view bytes, const DetectedEncoding& encoding) {
    const std::string_view body = bytes.substr(std::min(encoding.bomLength, bytes.size()));
    if (encoding.name == "utf-16le") return decode_utf16(body, true);
    if (encoding.name == "utf-16be") return decode_utf16(body, false);
    if (encoding.name == "latin-1") {
        std::string out;
        out.reserve(body.size() * 2);
        for (char c : body) append_utf8(out, static_cast<unsigned char>(c));
        return out;
    }
    if (!is_valid_utf8(body)) {
        throw InvalidArgument("undecodable", "content after the UTF-8 byte order mark is not valid UTF-8");
    }
    return std::string(body);
}

}  // namespace ods
