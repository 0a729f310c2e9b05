#pragma once

#include <fstream>

#include <json.hpp>

#include "ulrich/cohomology.hpp"

namespace ulrich {

// Versioned JSON persistence for the line-bundle cohomology cache: a map
// from canonical query keys to dimension tuples.

inline void save_cohom_cache(const std::string& path, const CohomCache& cache)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [key, vec] : cache.raw())
        entries[key] = vec.h;
    j["entries"] = entries;
    std::ofstream out(path);
    if (!out)
        throw error("cannot write cache file " + path);
    out << j.dump(1) << "\n";
}

inline void load_cohom_cache(const std::string& path, CohomCache& cache)
{
    std::ifstream in(path);
    if (!in)
        throw error("cannot read cache file " + path);
    nlohmann::json j;
    in >> j;
    if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
        throw error("cache file " + path + " has an unsupported schema version");
    for (const auto& [key, val] : j["entries"].items()) {
        CohomVector v;
        for (const auto& x : val)
            v.h.push_back(x.get<Int>());
        cache.load_raw(key, std::move(v));
    }
}

} // namespace ulrich
