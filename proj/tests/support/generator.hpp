#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ods/model.hpp"

namespace odstest {

using Rng = std::mt19937_64;

struct GeneratorOptions {
    bool extensions = true;   // sprinkle unknown "x-" keys over records
    bool richRai = false;     // fill every RAI section, usually with several entries
    int maxResources = 3;
};

/// Random datasheet that satisfies every type invariant of the model.
ods::Datasheet random_datasheet(Rng& rng, const GeneratorOptions& opts = {});

/// Random UTF-8 text, including quotes, escapes and non-ASCII code points.
std::string random_text(Rng& rng, std::size_t max_len = 12);

std::string random_slug(Rng& rng);

/// Random JSON value of bounded depth (strings, integers, booleans, null,
/// arrays, objects).
nlohmann::json random_json(Rng& rng, int depth = 2);

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace odstest
