#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "ulrich/variety.hpp"

namespace ulrich {

// ---------------------------------------------------------------------------
// Bott formula on P^n: cohomology of Omega^p(t), with p = 0 giving O(t).
// Nonzero in at most one degree:
//   h^0 = C(t+n-p, n-p) * C(t-1, p)        for t > p
//   h^p = 1                                 for t = 0
//   h^n = C(-t+p, p) * C(-t-1, n-p)         for t < p - n
// ---------------------------------------------------------------------------
inline CohomVector cohom_pn(int n, int p, Int t)
{
    if (p < 0 || p > n)
        throw parameter_error("cohom_pn: p out of range [0," + std::to_string(n) + "]");
    CohomVector h(static_cast<size_t>(n) + 1);
    if (t > p)
        h.h[0] = binomial(t + n - p, n - p) * binomial(t - 1, p);
    else if (t == 0)
        h.h[static_cast<size_t>(p)] = 1;
    else if (t < p - n)
        h.h[static_cast<size_t>(n)] = binomial(-t + p, p) * binomial(-t - 1, n - p);
    return h;
}

// ---------------------------------------------------------------------------
// Kunneth on P^{n_1} x ... x P^{n_s}.
// ---------------------------------------------------------------------------
inline CohomVector cohom_product(const VarietyDesc& v, const DivClass& d)
{
    if (v.kind != VarietyKind::Product)
        throw parameter_error("cohom_product expects a product variety");
    v.check_class(d);
    std::vector<Int> acc{1}; // degree-indexed convolution accumulator
    for (size_t f = 0; f < v.params.size(); ++f) {
        CohomVector hf = cohom_pn(static_cast<int>(v.params[f]), 0, d[f]);
        std::vector<Int> next(acc.size() + hf.size() - 1, 0);
        for (size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0)
                continue;
            for (size_t j = 0; j < hf.size(); ++j)
                next[i + j] += acc[i] * hf.h[j];
        }
        acc = std::move(next);
    }
    CohomVector h(static_cast<size_t>(v.dim()) + 1);
    for (size_t i = 0; i < h.size() && i < acc.size(); ++i)
        h.h[i] = acc[i];
    return h;
}

// ---------------------------------------------------------------------------
// Scroll S(a_0..a_n): pushforward to P^1.
// Class (x,y) means yH + (x-y)F. For y >= 0 the pushforward is
// Sym^y(O(a_0)+...+O(a_n)) twisted by O(x-y); for -n <= y <= -1 everything
// vanishes; for y <= -(n+1) the top direct image contributes in degrees
// n and n+1 via the dual symmetric power twisted by det^-1.
// Sym powers of the split bundle are enumerated as multisets.
// ---------------------------------------------------------------------------
namespace detail {

// Degrees of the line-bundle summands of Sym^m(O(a_0)+...+O(a_n)),
// enumerated as compositions of m into |a| nonnegative parts.
inline void sym_degrees_rec(const std::vector<Int>& a, size_t idx, Int left, Int deg,
                            std::vector<Int>& out)
{
    if (idx + 1 == a.size()) {
        out.push_back(deg + left * a[idx]);
        return;
    }
    for (Int take = 0; take <= left; ++take)
        sym_degrees_rec(a, idx + 1, left - take, deg + take * a[idx], out);
}

inline void sym_degrees(const std::vector<Int>& a, Int m, std::vector<Int>& out)
{
    out.clear();
    if (m < 0 || a.empty())
        return;
    sym_degrees_rec(a, 0, m, 0, out);
}

inline void add_p1_cohom(CohomVector& h, Int deg, size_t at)
{
    // H^0(P^1, O(d)) = d+1 for d >= 0; H^1 = -d-1 for d <= -2.
    if (deg >= 0)
        h.h[at] += deg + 1;
    else if (deg <= -2)
        h.h[at + 1] += -deg - 1;
}

} // namespace detail

inline CohomVector cohom_scroll(const VarietyDesc& v, const DivClass& d)
{
    if (v.kind != VarietyKind::Scroll)
        throw parameter_error("cohom_scroll expects a scroll");
    v.check_class(d);
    const Int x = d[0], y = d[1];
    const Int n = v.scroll_fiber_dim();
    const Int c = v.scroll_degree();
    const Int b = x - y; // coefficient of F
    CohomVector h(static_cast<size_t>(n) + 2);

    std::vector<Int> degs;
    if (y >= 0) {
        detail::sym_degrees(v.params, y, degs);
        for (Int deg : degs)
            detail::add_p1_cohom(h, deg + b, 0);
    } else if (y <= -(n + 1)) {
        // R^n pushforward: Sym^{-y-n-1}(E^dual) (x) det(E)^dual (x) O(b)
        detail::sym_degrees(v.params, -y - n - 1, degs);
        for (Int deg : degs)
            detail::add_p1_cohom(h, -deg - c + b, static_cast<size_t>(n));
    }
    // -n <= y <= -1: all direct images vanish
    return h;
}

// ---------------------------------------------------------------------------
// Degree-6 flag threefold F in P^2 x P^2: Borel-Weil-Bott for O_F(a,b).
// Shift to (x,y) = (a+1,b+1); singular iff x=0, y=0 or x+y=0. Otherwise the
// unique Weyl element of S_3 moving (x,y) into the dominant chamber has
// length l and h^l = (p+1)(q+1)(p+q+2)/2 at the dominant image (p+1,q+1).
// ---------------------------------------------------------------------------
namespace detail {

struct WeylElement {
    int length;
    // action described by word in the two reflections, applied right-to-left
    std::vector<int> word;
};

inline const std::vector<WeylElement>& weyl_s3()
{
    static const std::vector<WeylElement> w = {
        {0, {}}, {1, {1}}, {1, {2}}, {2, {1, 2}}, {2, {2, 1}}, {3, {1, 2, 1}},
    };
    return w;
}

inline std::pair<Int, Int> apply_reflection(int s, std::pair<Int, Int> xy)
{
    auto [x, y] = xy;
    if (s == 1)
        return {-x, x + y};
    return {x + y, -y};
}

} // namespace detail

inline CohomVector cohom_flag_bwb(Int a, Int b)
{
    CohomVector h(4);
    Int x = a + 1, y = b + 1;
    if (x == 0 || y == 0 || x + y == 0)
        return h; // singular weight, total vanishing
    int found = 0;
    for (const auto& w : detail::weyl_s3()) {
        std::pair<Int, Int> im{x, y};
        for (auto it = w.word.rbegin(); it != w.word.rend(); ++it)
            im = detail::apply_reflection(*it, im);
        if (im.first > 0 && im.second > 0) {
            Int p = im.first - 1, q = im.second - 1;
            h.h[static_cast<size_t>(w.length)] = (p + 1) * (q + 1) * (p + q + 2) / 2;
            ++found;
        }
    }
    if (found != 1)
        throw error("BWB: dominant representative not unique for (" + std::to_string(a) +
                    "," + std::to_string(b) + ")");
    return h;
}

// Kunneth cohomology of O(a,b) on the ambient P^2 x P^2.
inline CohomVector cohom_p2xp2(Int a, Int b)
{
    CohomVector ha = cohom_pn(2, 0, a), hb = cohom_pn(2, 0, b);
    CohomVector h(5);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            h.h[i + j] += ha.h[i] * hb.h[j];
    return h;
}

// Restriction method: 0 -> O(a-1,b-1) -> O(a,b) -> O_F(a,b) -> 0 on P^2 x P^2.
// Exact when no two adjacent ambient groups are simultaneously nonzero;
// otherwise the connecting-map rank is unknown and an interval is returned.
inline IntervalCohomVector cohom_flag_les(Int a, Int b)
{
    IntervalCohomVector sub = IntervalCohomVector::exact(cohom_p2xp2(a - 1, b - 1));
    IntervalCohomVector mid = IntervalCohomVector::exact(cohom_p2xp2(a, b));
    IntervalCohomVector q = les_quot(sub, mid);
    q.v.resize(4); // ambient has 5 degrees; the restriction lives on a threefold
    return q;
}

enum class FlagMethod { BWB, RestrictionLES };

inline IntervalCohomVector cohom_flag(Int a, Int b, FlagMethod m)
{
    if (m == FlagMethod::BWB)
        return IntervalCohomVector::exact(cohom_flag_bwb(a, b));
    return cohom_flag_les(a, b);
}

// ---------------------------------------------------------------------------
// Optional memoization cache for line-bundle cohomology, keyed by
// (variety, class, method). Behaves as if absent: concurrent readers are
// fine and inserts are idempotent.
// ---------------------------------------------------------------------------
class CohomCache {
public:
    using Key = std::string;

    bool enabled() const { return enabled_; }
    void set_enabled(bool e) { enabled_ = e; }

    std::optional<CohomVector> get(const Key& k) const
    {
        if (!enabled_)
            return std::nullopt;
        std::lock_guard<std::mutex> g(mu_);
        auto it = map_.find(k);
        if (it == map_.end())
            return std::nullopt;
        ++hits_;
        return it->second;
    }
    void put(const Key& k, const CohomVector& v)
    {
        if (!enabled_)
            return;
        std::lock_guard<std::mutex> g(mu_);
        map_.emplace(k, v);
    }
    void clear()
    {
        std::lock_guard<std::mutex> g(mu_);
        map_.clear();
        hits_ = 0;
    }
    size_t size() const
    {
        std::lock_guard<std::mutex> g(mu_);
        return map_.size();
    }
    size_t hits() const
    {
        std::lock_guard<std::mutex> g(mu_);
        return hits_;
    }
    const std::map<Key, CohomVector>& raw() const { return map_; }
    void load_raw(const Key& k, CohomVector v) { map_.emplace(k, std::move(v)); }

private:
    mutable std::mutex mu_;
    mutable size_t hits_ = 0;
    bool enabled_ = true;
    std::map<Key, CohomVector> map_;
};

inline CohomCache& global_cohom_cache()
{
    static CohomCache c;
    return c;
}

// Exact line-bundle cohomology on any catalog variety (BWB on the flag;
// O(t) in O(1)-units on the Veronese surface).
inline CohomVector line_cohomology(const VarietyDesc& v, const DivClass& d,
                                   CohomCache* cache = &global_cohom_cache())
{
    v.check_class(d);
    std::string key;
    if (cache && cache->enabled()) {
        key = v.spec_string() + "|" + d.str() + "|line";
        if (auto hit = cache->get(key))
            return *hit;
    }
    CohomVector h;
    switch (v.kind) {
    case VarietyKind::Product:
        h = cohom_product(v, d);
        break;
    case VarietyKind::Scroll:
        h = cohom_scroll(v, d);
        break;
    case VarietyKind::FlagF:
        h = cohom_flag_bwb(d[0], d[1]);
        break;
    case VarietyKind::Veronese2:
        h = cohom_pn(2, 0, d[0]);
        break;
    }
    if (cache && cache->enabled())
        cache->put(key, h);
    return h;
}

} // namespace ulrich
