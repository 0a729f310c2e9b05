#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ulrich {

using Int = long long;

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parameter_error : error {
    explicit parameter_error(const std::string& msg) : error(msg) {}
};

// Binomial coefficient, zero outside the Pascal triangle. Values in this
// library stay far below 2^62; guard anyway.
inline Int binomial(Int n, Int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (Int i = 1; i <= k; ++i) {
        __int128 t = static_cast<__int128>(r) * (n - k + i) / i;
        if (t > static_cast<__int128>(1) << 62)
            throw error("binomial overflow");
        r = static_cast<Int>(t);
    }
    return r;
}

// Integer tuple in the Picard lattice of a variety.
struct DivClass {
    std::vector<Int> c;

    DivClass() = default;
    explicit DivClass(std::vector<Int> v) : c(std::move(v)) {}
    DivClass(std::initializer_list<Int> v) : c(v) {}

    size_t size() const { return c.size(); }
    Int operator[](size_t i) const { return c[i]; }
    Int& operator[](size_t i) { return c[i]; }

    friend DivClass operator+(const DivClass& a, const DivClass& b)
    {
        if (a.size() != b.size())
            throw error("DivClass rank mismatch");
        DivClass r = a;
        for (size_t i = 0; i < r.size(); ++i)
            r.c[i] += b.c[i];
        return r;
    }
    friend DivClass operator-(const DivClass& a, const DivClass& b)
    {
        if (a.size() != b.size())
            throw error("DivClass rank mismatch");
        DivClass r = a;
        for (size_t i = 0; i < r.size(); ++i)
            r.c[i] -= b.c[i];
        return r;
    }
    friend DivClass operator*(Int k, const DivClass& a)
    {
        DivClass r = a;
        for (auto& x : r.c)
            x *= k;
        return r;
    }
    DivClass operator-() const { return -1 * *this; }

    bool operator==(const DivClass& o) const { return c == o.c; }
    bool operator!=(const DivClass& o) const { return !(*this == o); }
    bool operator<(const DivClass& o) const { return c < o.c; }

    std::string str() const
    {
        std::string s = "(";
        for (size_t i = 0; i < c.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(c[i]);
        }
        return s + ")";
    }
};

// Exact cohomology dimension vector, entry i = h^i.
struct CohomVector {
    std::vector<Int> h;

    CohomVector() = default;
    explicit CohomVector(size_t n) : h(n, 0) {}
    CohomVector(std::initializer_list<Int> v) : h(v) {}

    size_t size() const { return h.size(); }
    Int operator[](size_t i) const { return i < h.size() ? h[i] : 0; }

    Int euler_char() const
    {
        Int chi = 0;
        for (size_t i = 0; i < h.size(); ++i)
            chi += (i % 2 ? -1 : 1) * h[i];
        return chi;
    }
    bool is_zero() const
    {
        return std::all_of(h.begin(), h.end(), [](Int x) { return x == 0; });
    }
    bool operator==(const CohomVector& o) const { return h == o.h; }

    std::string str() const
    {
        std::string s = "(";
        for (size_t i = 0; i < h.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(h[i]);
        }
        return s + ")";
    }
};

// Per-degree [lo,hi] bounds on cohomology dimensions. Degenerate everywhere
// means the value is exact.
struct IntervalCohomVector {
    struct Band {
        Int lo = 0, hi = 0;
        bool exact() const { return lo == hi; }
        bool operator==(const Band& o) const { return lo == o.lo && hi == o.hi; }
    };
    std::vector<Band> v;

    IntervalCohomVector() = default;
    explicit IntervalCohomVector(size_t n) : v(n) {}

    static IntervalCohomVector exact(const CohomVector& c)
    {
        IntervalCohomVector r(c.size());
        for (size_t i = 0; i < c.size(); ++i)
            r.v[i] = {c.h[i], c.h[i]};
        return r;
    }
    static IntervalCohomVector zero(size_t n) { return IntervalCohomVector(n); }

    size_t size() const { return v.size(); }
    Band at(long i) const
    {
        if (i < 0 || i >= static_cast<long>(v.size()))
            return {0, 0};
        return v[static_cast<size_t>(i)];
    }

    bool is_exact() const
    {
        return std::all_of(v.begin(), v.end(), [](const Band& b) { return b.exact(); });
    }
    bool is_exact_zero() const
    {
        return std::all_of(v.begin(), v.end(),
                           [](const Band& b) { return b.lo == 0 && b.hi == 0; });
    }
    CohomVector lower() const
    {
        CohomVector c(v.size());
        for (size_t i = 0; i < v.size(); ++i)
            c.h[i] = v[i].lo;
        return c;
    }
    CohomVector to_exact() const
    {
        if (!is_exact())
            throw error("interval cohomology is not exact: " + str());
        return lower();
    }

    // c = a + b componentwise (direct sums).
    friend IntervalCohomVector operator+(const IntervalCohomVector& a,
                                         const IntervalCohomVector& b)
    {
        if (a.size() != b.size())
            throw error("interval length mismatch");
        IntervalCohomVector r(a.size());
        for (size_t i = 0; i < a.size(); ++i)
            r.v[i] = {a.v[i].lo + b.v[i].lo, a.v[i].hi + b.v[i].hi};
        return r;
    }

    // Intersection of two sound enclosures of the same value.
    static IntervalCohomVector intersect(const IntervalCohomVector& a,
                                         const IntervalCohomVector& b)
    {
        if (a.size() != b.size())
            throw error("interval length mismatch");
        IntervalCohomVector r(a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            r.v[i] = {std::max(a.v[i].lo, b.v[i].lo), std::min(a.v[i].hi, b.v[i].hi)};
            if (r.v[i].lo > r.v[i].hi)
                throw error("inconsistent interval intersection at degree " +
                            std::to_string(i) + ": " + a.str() + " vs " + b.str());
        }
        return r;
    }

    IntervalCohomVector reversed() const
    {
        IntervalCohomVector r = *this;
        std::reverse(r.v.begin(), r.v.end());
        return r;
    }

    std::string str() const
    {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i)
                s += ',';
            if (v[i].exact())
                s += std::to_string(v[i].lo);
            else
                s += "[" + std::to_string(v[i].lo) + ".." + std::to_string(v[i].hi) + "]";
        }
        return s + ")";
    }
};

// Conservative dimension bounds along a short exact sequence
// 0 -> A -> B -> C -> 0 of sheaves, from the long exact cohomology sequence.
// Each helper takes the two known terms and bounds the third.

// Middle from sub and quotient:
// h^i(B) = (a_i - rk delta_{i-1}) + (c_i - rk delta_i) with the connecting
// maps delta_{i-1}: H^{i-1}C -> H^i A and delta_i: H^i C -> H^{i+1} A.
inline IntervalCohomVector les_middle(const IntervalCohomVector& sub,
                                      const IntervalCohomVector& quot)
{
    size_t n = sub.size();
    IntervalCohomVector r(n);
    for (long i = 0; i < static_cast<long>(n); ++i) {
        Int hi = sub.at(i).hi + quot.at(i).hi;
        Int lo = std::max<Int>(0, sub.at(i).lo - quot.at(i - 1).hi) +
                 std::max<Int>(0, quot.at(i).lo - sub.at(i + 1).hi);
        r.v[static_cast<size_t>(i)] = {lo, hi};
    }
    return r;
}

// Sub from middle and quotient: h^i(A) = coker(H^{i-1}B -> H^{i-1}C) + ker(H^i B -> H^i C).
inline IntervalCohomVector les_sub(const IntervalCohomVector& mid,
                                   const IntervalCohomVector& quot)
{
    size_t n = mid.size();
    IntervalCohomVector r(n);
    for (long i = 0; i < static_cast<long>(n); ++i) {
        Int hi = quot.at(i - 1).hi + mid.at(i).hi;
        Int lo = std::max<Int>(0, quot.at(i - 1).lo - mid.at(i - 1).hi) +
                 std::max<Int>(0, mid.at(i).lo - quot.at(i).hi);
        r.v[static_cast<size_t>(i)] = {lo, hi};
    }
    return r;
}

// Quotient from sub and middle: h^i(C) = coker(H^i A -> H^i B) + ker(H^{i+1} A -> H^{i+1} B).
inline IntervalCohomVector les_quot(const IntervalCohomVector& sub,
                                    const IntervalCohomVector& mid)
{
    size_t n = mid.size();
    IntervalCohomVector r(n);
    for (long i = 0; i < static_cast<long>(n); ++i) {
        Int hi = mid.at(i).hi + sub.at(i + 1).hi;
        Int lo = std::max<Int>(0, mid.at(i).lo - sub.at(i).hi) +
                 std::max<Int>(0, sub.at(i + 1).lo - mid.at(i + 1).hi);
        r.v[static_cast<size_t>(i)] = {lo, hi};
    }
    return r;
}

inline IntervalCohomVector scale(Int k, const IntervalCohomVector& a)
{
    IntervalCohomVector r = a;
    for (auto& b : r.v) {
        b.lo *= k;
        b.hi *= k;
    }
    return r;
}

} // namespace ulrich
