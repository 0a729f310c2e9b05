#pragma once

#include "ulrich/sheaf_expr.hpp"

#include <json.hpp>

namespace ulrich {

enum class TriState { Yes, No, Unknown };

inline const char* tri_str(TriState t)
{
    switch (t) {
    case TriState::Yes:
        return "yes";
    case TriState::No:
        return "no";
    case TriState::Unknown:
        return "unknown";
    }
    return "?";
}

inline TriState band_is_zero(IntervalCohomVector::Band b)
{
    if (b.lo == 0 && b.hi == 0)
        return TriState::Yes;
    if (b.lo >= 1)
        return TriState::No;
    return TriState::Unknown;
}

inline TriState tri_all(std::initializer_list<TriState> ts)
{
    bool unknown = false;
    for (TriState t : ts) {
        if (t == TriState::No)
            return TriState::No;
        unknown = unknown || t == TriState::Unknown;
    }
    return unknown ? TriState::Unknown : TriState::Yes;
}

// One required vanishing of the Ulrich characterization.
struct ConditionCheck {
    std::string what; // e.g. "h2(E(-2))"
    TriState status;
};

struct UlrichReport {
    TriState is_initialized = TriState::Unknown;
    std::vector<ConditionCheck> condition_iii;
    TriState is_ulrich = TriState::Unknown;
    IntervalCohomVector::Band h0;
    Int deg_times_rank = 0;
    std::vector<TriState> vanishing_profile; // index t-1 for twists -tH, t=1..dim
    std::vector<Int> betti;                  // filled when is_ulrich == yes
    std::string failed_condition;            // first failing/unknown entry
};

// Predicted shape of the linear resolution over the ambient coordinate ring:
// a_0 = rank*deg and a_i = C(N-n, i) * a_0.
inline std::vector<Int> betti_prediction_values(const VarietyDesc& v, Int rank)
{
    Int a0 = rank * v.degree();
    Int codim = v.ambient_dim() - v.dim();
    std::vector<Int> a;
    for (Int i = 0; i <= codim; ++i)
        a.push_back(binomial(codim, i) * a0);
    return a;
}

inline UlrichReport ulrich_check(const VarietyDesc& v, const SheafExpr& e,
                                 CohomCache* cache = &global_cohom_cache())
{
    const int dim = v.dim();
    const DivClass h = v.hyperplane_class();
    UlrichReport rep;
    rep.deg_times_rank = v.degree() * rank_c1(v, e).rank;

    std::vector<IntervalCohomVector> tw(static_cast<size_t>(dim) + 2);
    for (int t = 0; t <= dim + 1; ++t)
        tw[static_cast<size_t>(t)] =
            evaluate_cohom(v, SheafExpr::twist(e, Int{-t} * h), cache);

    rep.h0 = tw[0].at(0);

    // full vanishing at twists -H..-dim*H
    for (int t = 1; t <= dim; ++t) {
        TriState all = TriState::Yes;
        for (int i = 0; i <= dim; ++i)
            all = tri_all({all, band_is_zero(tw[static_cast<size_t>(t)].at(i))});
        rep.vanishing_profile.push_back(all);
    }

    // condition (iii): h^i(E(-i)) = 0 for i > 0, h^i(E(-i-1)) = 0 for i < dim
    auto add = [&](int degree, int twist) {
        auto band = tw[static_cast<size_t>(twist)].at(degree);
        ConditionCheck c{"h" + std::to_string(degree) + "(E(-" + std::to_string(twist) +
                             "))",
                         band_is_zero(band)};
        if (c.status != TriState::Yes && rep.failed_condition.empty())
            rep.failed_condition = c.what;
        rep.condition_iii.push_back(c);
    };
    for (int i = 1; i <= dim; ++i)
        add(i, i);
    for (int i = 0; i < dim; ++i)
        add(i, i + 1);

    TriState iii = TriState::Yes;
    for (const auto& c : rep.condition_iii)
        iii = tri_all({iii, c.status});

    TriState nonzero_h0 = rep.h0.lo >= 1 ? TriState::Yes
                          : rep.h0.hi == 0 ? TriState::No
                                           : TriState::Unknown;
    rep.is_initialized = tri_all({band_is_zero(tw[1].at(0)), nonzero_h0});
    rep.is_ulrich = tri_all({iii, nonzero_h0});
    if (rep.is_ulrich == TriState::Yes) {
        rep.betti = betti_prediction_values(v, rep.deg_times_rank / v.degree());
        if (rep.h0.exact() && rep.h0.lo != rep.deg_times_rank)
            throw error("ulrich_check: h0 " + std::to_string(rep.h0.lo) +
                        " does not match deg*rank " + std::to_string(rep.deg_times_rank));
    }
    return rep;
}

struct ACMReport {
    TriState is_acm = TriState::Unknown;
    Int window = 0; // twists checked in [-window, window]
    std::string certificate;
    std::string failure; // first failing twist/degree when not ACM
};

namespace analyzer_detail {

inline void max_leaf_coeff(const SheafExpr& e, Int& m)
{
    switch (e.node) {
    case SheafExpr::Node::Line:
        for (Int c : e.line.c)
            m = std::max(m, std::llabs(c));
        return;
    case SheafExpr::Node::Twist:
        for (Int c : e.twist_class.c)
            m = std::max(m, std::llabs(c));
        break;
    default:
        break;
    }
    for (const auto& c : e.children)
        max_leaf_coeff(c, m);
}

} // namespace analyzer_detail

// Checks intermediate cohomology on a finite twist window and certifies the
// complement: beyond the window every leaf sits in a cohomology regime that
// is monotone in the twist, so intermediate vanishing persists.
inline ACMReport acm_check(const VarietyDesc& v, const SheafExpr& e,
                           CohomCache* cache = &global_cohom_cache())
{
    const int dim = v.dim();
    const DivClass h = v.hyperplane_class();
    ACMReport rep;

    Int maxcoeff = 0;
    analyzer_detail::max_leaf_coeff(normalize(e), maxcoeff);
    Int maxparam = 2;
    for (Int p : v.params)
        maxparam = std::max(maxparam, p);
    rep.window = maxcoeff + dim + maxparam + 2;
    rep.certificate =
        "window [-" + std::to_string(rep.window) + "," + std::to_string(rep.window) +
        "]; beyond it every summand of every leaf has twist degree in a single " +
        "cohomological regime that moves monotonically with t, so intermediate " +
        "cohomology stays zero";

    rep.is_acm = TriState::Yes;
    if (dim < 2)
        return rep;
    for (Int t = -rep.window; t <= rep.window; ++t) {
        auto iv = evaluate_cohom(v, SheafExpr::twist(e, t * h), cache);
        for (int i = 1; i < dim; ++i) {
            TriState z = band_is_zero(iv.at(i));
            if (z == TriState::Yes)
                continue;
            rep.is_acm = tri_all({rep.is_acm, z});
            if (rep.failure.empty())
                rep.failure = "h" + std::to_string(i) + "(E(" + std::to_string(t) +
                              "H)) = [" + std::to_string(iv.at(i).lo) + "," +
                              std::to_string(iv.at(i).hi) + "]";
            if (z == TriState::No)
                return rep;
        }
    }
    return rep;
}

inline std::vector<Int> betti_prediction(const VarietyDesc& v, const SheafExpr& e,
                                         CohomCache* cache = &global_cohom_cache())
{
    UlrichReport rep = ulrich_check(v, e, cache);
    if (rep.is_ulrich != TriState::Yes)
        throw parameter_error("betti_prediction requires an Ulrich input; " +
                              (rep.failed_condition.empty() ? std::string("h0 undetermined")
                                                            : rep.failed_condition));
    return rep.betti;
}

// ------------------------------ serialization ------------------------------

inline nlohmann::json to_json(const UlrichReport& r)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["is_ulrich"] = tri_str(r.is_ulrich);
    j["is_initialized"] = tri_str(r.is_initialized);
    j["h0"] = {{"lo", r.h0.lo}, {"hi", r.h0.hi}};
    j["deg_times_rank"] = r.deg_times_rank;
    nlohmann::json iii = nlohmann::json::array();
    for (const auto& c : r.condition_iii)
        iii.push_back({{"check", c.what}, {"status", tri_str(c.status)}});
    j["condition_iii"] = iii;
    nlohmann::json vp = nlohmann::json::array();
    for (TriState t : r.vanishing_profile)
        vp.push_back(tri_str(t));
    j["vanishing_profile"] = vp;
    j["betti"] = r.betti;
    return j;
}

inline nlohmann::json to_json(const ACMReport& r)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["is_acm"] = tri_str(r.is_acm);
    j["window"] = r.window;
    j["certificate"] = r.certificate;
    if (!r.failure.empty())
        j["failure"] = r.failure;
    return j;
}

} // namespace ulrich
