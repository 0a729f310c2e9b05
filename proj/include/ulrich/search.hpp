#pragma once

#include "ulrich/analyzer.hpp"

namespace ulrich {

// Census of Ulrich line bundles over a divisor box, Ext^1 dimensions between
// them, and family reports for extensions of direct sums.

struct Box {
    std::vector<std::pair<Int, Int>> bounds; // inclusive per coordinate

    void check(const VarietyDesc& v) const
    {
        if (static_cast<int>(bounds.size()) != v.picard_rank())
            throw parameter_error("box has " + std::to_string(bounds.size()) +
                                  " intervals, expected " +
                                  std::to_string(v.picard_rank()));
        for (auto [lo, hi] : bounds)
            if (lo > hi)
                throw parameter_error("empty box interval [" + std::to_string(lo) + "," +
                                      std::to_string(hi) + "]");
    }
    Box doubled() const
    {
        Box b = *this;
        for (auto& [lo, hi] : b.bounds) {
            lo *= 2;
            hi *= 2;
        }
        return b;
    }
};

inline std::vector<DivClass> search_ulrich_line_bundles(const VarietyDesc& v, const Box& box,
                                                        CohomCache* cache = &global_cohom_cache())
{
    box.check(v);
    std::vector<DivClass> found;
    DivClass d(std::vector<Int>(box.bounds.size(), 0));
    for (size_t i = 0; i < box.bounds.size(); ++i)
        d[i] = box.bounds[i].first;
    while (true) {
        UlrichReport rep = ulrich_check(v, SheafExpr::line_bundle(d), cache);
        if (rep.is_ulrich == TriState::Yes)
            found.push_back(d);
        size_t k = box.bounds.size();
        while (k > 0 && ++d[k - 1] > box.bounds[k - 1].second) {
            d[k - 1] = box.bounds[k - 1].first;
            --k;
        }
        if (k == 0)
            break;
    }
    std::sort(found.begin(), found.end());
    return found;
}

// dim Ext^1(quot, sub) for line bundles, reduced to h^1 of the difference.
inline Int ext1_dim(const VarietyDesc& v, const DivClass& quot, const DivClass& sub,
                    CohomCache* cache = &global_cohom_cache())
{
    return line_cohomology(v, sub - quot, cache)[1];
}

inline Int hom_dim(const VarietyDesc& v, const DivClass& quot, const DivClass& sub,
                   CohomCache* cache = &global_cohom_cache())
{
    return line_cohomology(v, sub - quot, cache)[0];
}

struct Multiset {
    std::vector<std::pair<DivClass, Int>> items; // class with multiplicity

    Int total() const
    {
        Int t = 0;
        for (const auto& [d, m] : items)
            t += m;
        return t;
    }
};

struct FamilyReport {
    Multiset sub, quot;
    std::vector<std::vector<Int>> ext_matrix; // [quot index][sub index]
    std::vector<std::vector<Int>> hom_matrix;
    Int total_ext_dim = 0;
};

inline FamilyReport family_report(const VarietyDesc& v, const Multiset& sub,
                                  const Multiset& quot,
                                  CohomCache* cache = &global_cohom_cache())
{
    for (const auto& part : {sub, quot})
        for (const auto& [d, m] : part.items) {
            if (m <= 0)
                throw parameter_error("multiplicities must be positive");
            auto rep = ulrich_check(v, SheafExpr::line_bundle(d), cache);
            if (rep.is_ulrich != TriState::Yes)
                throw parameter_error("family member " + d.str() +
                                      " is not an Ulrich line bundle");
        }
    FamilyReport rep;
    rep.sub = sub;
    rep.quot = quot;
    rep.ext_matrix.assign(quot.items.size(), std::vector<Int>(sub.items.size(), 0));
    rep.hom_matrix = rep.ext_matrix;
    for (size_t i = 0; i < quot.items.size(); ++i)
        for (size_t j = 0; j < sub.items.size(); ++j) {
            rep.ext_matrix[i][j] = ext1_dim(v, quot.items[i].first, sub.items[j].first, cache);
            rep.hom_matrix[i][j] = hom_dim(v, quot.items[i].first, sub.items[j].first, cache);
            rep.total_ext_dim += quot.items[i].second * sub.items[j].second *
                                 rep.ext_matrix[i][j];
        }
    return rep;
}

inline nlohmann::json to_json(const FamilyReport& r)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    auto part = [](const Multiset& m) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& [d, mult] : m.items)
            a.push_back({{"class", d.c}, {"mult", mult}});
        return a;
    };
    j["sub"] = part(r.sub);
    j["quot"] = part(r.quot);
    j["ext_matrix"] = r.ext_matrix;
    j["hom_matrix"] = r.hom_matrix;
    j["total_ext_dim"] = r.total_ext_dim;
    return j;
}

} // namespace ulrich
