#include <set>
#include <string>
#include <vector>

#include "ods/codec.hpp"
#include "ods/error.hpp"

namespace ods {

std::string escape_pointer_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    for (char c : token) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

namespace {

// Tracks where the parser is so a duplicate key can be reported by pointer.
class KeyTracker {
public:
    bool on_event(nlohmann::json::parse_event_t event, const nlohmann::json& parsed) {
        using Event = nlohmann::json::parse_event_t;
        switch (event) {
            case Event::object_start:
                frames_.push_back(Frame{false, 0, {}, {}});
                break;
            case Event::array_start:
                frames_.push_back(Frame{true, 0, {}, {}});
                break;
            case Event::key: {
                auto& top = frames_.back();
                top.key = parsed.get<std::string>();
                if (!top.keys.insert(top.key).second) {
                    throw ParseError(ParseError::Kind::DuplicateKey, pointer(),
                                     "key \"" + top.key + "\" appears more than once");
                }
                break;
            }
            case Event::object_end:
            case Event::array_end:
                frames_.pop_back();
                advance();
                break;
            case Event::value:
                advance();
                break;
        }
        return true;
    }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
        std::set<std::string> keys;
    };

    void advance() {
        if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    }

    std::string pointer() const {
        std::string out;
        for (const auto& f : frames_) {
            out += '/';
            out += f.array ? std::to_string(f.index) : escape_pointer_token(f.key);
        }
        return out;
    }

    std::vector<Frame> frames_;
};

}  // namespace

nlohmann::json parse_json_strict(std::string_view text) {
    KeyTracker tracker;
    try {
        return nlohmann::json::parse(
            text.begin(), text.end(),
            [&tracker](int, nlohmann::json::parse_event_t event, nlohmann::json& parsed) {
                return tracker.on_event(event, parsed);
            });
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is the 1-based offset of the last character read.
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t line_start = 0;
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                line_start = i + 1;
            }
        }
        std::string detail = e.what();
        if (auto pos = detail.find("syntax error"); pos != std::string::npos) detail = detail.substr(pos);
        throw ParseError(ParseError::Kind::Syntax, "", detail, line, end - line_start + 1);
    }
}

}  // namespace ods
