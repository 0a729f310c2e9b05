#pragma once

// Test-only oracles, independent of the closed forms they check.

#include <map>
#include <vector>

#include "ulrich/core.hpp"
#include "ulrich/toric.hpp"

namespace test_oracle {

using ulrich::Int;

// Monomials of total degree t in vars variables (counts sections of O(t)).
inline Int monomial_count(int vars, Int t)
{
    if (t < 0)
        return 0;
    // stars and bars by explicit enumeration to stay away from binomial()
    std::vector<Int> table(static_cast<size_t>(t) + 1, 1); // vars = 1
    for (int v = 2; v <= vars; ++v)
        for (size_t d = 1; d < table.size(); ++d)
            table[d] += table[d - 1];
    return table[static_cast<size_t>(t)];
}

// Exponent vectors of the degree-t monomials in n+1 variables.
inline void monomials(int nvars, Int t, std::vector<std::vector<Int>>& out)
{
    out.clear();
    std::vector<Int> cur(static_cast<size_t>(nvars), 0);
    // lexicographic enumeration
    struct Rec {
        int nvars;
        std::vector<std::vector<Int>>& out;
        std::vector<Int>& cur;
        void go(int idx, Int left)
        {
            if (idx + 1 == nvars) {
                cur[static_cast<size_t>(idx)] = left;
                out.push_back(cur);
                return;
            }
            for (Int take = 0; take <= left; ++take) {
                cur[static_cast<size_t>(idx)] = take;
                go(idx + 1, left - take);
            }
        }
    } rec{nvars, out, cur};
    if (t < 0)
        return;
    rec.go(0, t);
}

// h^0(P^n, Omega^1(t)) as the kernel dimension of the Euler multiplication
// map H^0(O(t-1))^{n+1} -> H^0(O(t)), computed by exact rank.
inline Int omega1_h0_via_euler(int n, Int t)
{
    std::vector<std::vector<Int>> rows_basis, cols_basis;
    monomials(n + 1, t - 1, cols_basis);
    monomials(n + 1, t, rows_basis);
    if (cols_basis.empty())
        return 0;
    std::map<std::vector<Int>, size_t> row_index;
    for (size_t i = 0; i < rows_basis.size(); ++i)
        row_index[rows_basis[i]] = i;
    size_t ncols = cols_basis.size() * static_cast<size_t>(n + 1);
    std::vector<std::vector<__int128>> mat(rows_basis.size(),
                                           std::vector<__int128>(ncols, 0));
    for (size_t j = 0; j < cols_basis.size(); ++j)
        for (int v = 0; v <= n; ++v) {
            auto m = cols_basis[j];
            m[static_cast<size_t>(v)] += 1;
            mat[row_index[m]][j * static_cast<size_t>(n + 1) + static_cast<size_t>(v)] = 1;
        }
    Int rank = ulrich::toric_detail::rank_exact(std::move(mat));
    return static_cast<Int>(ncols) - rank;
}

// Degree of a Segre product as the top intersection number, computed in
// Z[h_1..h_s]/(h_i^{n_i+1}) by raising h_1+...+h_s to the top power.
inline Int product_degree_via_ring(const std::vector<Int>& dims)
{
    size_t s = dims.size();
    Int total = 0;
    for (Int n : dims)
        total += n;
    using Mono = std::vector<Int>;
    std::map<Mono, Int> poly{{Mono(s, 0), 1}};
    for (Int step = 0; step < total; ++step) {
        std::map<Mono, Int> next;
        for (const auto& [m, c] : poly)
            for (size_t i = 0; i < s; ++i) {
                Mono mm = m;
                if (++mm[i] > dims[i])
                    continue; // truncated by h_i^{n_i+1}
                next[mm] += c;
            }
        poly = std::move(next);
    }
    Mono top(dims.begin(), dims.end());
    auto it = poly.find(top);
    return it == poly.end() ? 0 : it->second;
}

} // namespace test_oracle
