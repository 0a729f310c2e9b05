#pragma once

#include <cstdlib>
#include <unordered_map>

#include "ulrich/variety.hpp"

namespace ulrich {

// ---------------------------------------------------------------------------
// Toric Cech oracle for products of projective spaces and rational normal
// scrolls. Test-facing ground truth: per lattice character m the support set
// {rays : <m, v> < -a} determines a subcomplex of cone faces, and h^i picks
// up the reduced simplicial cohomology of that subcomplex in degree i-1.
// Ranks are exact (fraction-free elimination over the integers).
// ---------------------------------------------------------------------------

struct FanDescriptor {
    int dim = 0;
    std::vector<std::vector<Int>> rays;        // primitive generators
    std::vector<std::vector<int>> max_cones;   // ray indices per maximal cone
    // divisor map: coefficient of ray r for class d is sum_j div_map[r][j]*d[j]
    std::vector<std::vector<Int>> div_map;
    // for product fans: [first coordinate, #coordinates) block per factor,
    // and the ray indices belonging to each factor
    std::vector<std::pair<int, int>> factor_blocks;
    std::vector<std::vector<int>> factor_rays;

    std::vector<Int> ray_coeffs(const DivClass& d) const
    {
        std::vector<Int> a(rays.size(), 0);
        for (size_t r = 0; r < rays.size(); ++r)
            for (size_t j = 0; j < d.size(); ++j)
                a[r] += div_map[r][j] * d[j];
        return a;
    }
};

namespace toric_detail {

inline __int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Exact rank via fraction-free Gaussian elimination with gcd row reduction.
inline int rank_exact(std::vector<std::vector<__int128>> m)
{
    const __int128 guard = static_cast<__int128>(1) << 100;
    size_t rows = m.size();
    if (rows == 0)
        return 0;
    size_t cols = m[0].size();
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        for (size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0)
                continue;
            __int128 f1 = m[rank][c], f2 = m[r][c];
            __int128 g = 0;
            for (size_t k = c; k < cols; ++k) {
                m[r][k] = m[r][k] * f1 - m[rank][k] * f2;
                if (m[r][k] > guard || m[r][k] < -guard)
                    throw error("toric rank: entry overflow guard exceeded");
                g = gcd128(g, m[r][k]);
            }
            if (g > 1)
                for (size_t k = c; k < cols; ++k)
                    m[r][k] /= g;
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

// Reduced simplicial cohomology dimensions (over Q) of the support
// subcomplex, reported as contributions to sheaf degrees 0..dim.
class MaskCohomology {
public:
    MaskCohomology(const FanDescriptor& fan) : fan_(fan) {}

    const std::vector<Int>& dims(uint32_t mask)
    {
        auto it = memo_.find(mask);
        if (it != memo_.end())
            return it->second;
        return memo_.emplace(mask, compute(mask)).first->second;
    }

private:
    std::vector<Int> compute(uint32_t mask) const
    {
        // faces: subsets of some maximal cone's rays, all inside the mask
        std::vector<std::vector<uint32_t>> faces(static_cast<size_t>(fan_.dim) + 2);
        faces[0].push_back(0); // the empty face, for reduced (co)homology
        std::vector<char> seen(1u << fan_.rays.size(), 0);
        for (const auto& cone : fan_.max_cones) {
            uint32_t avail = 0;
            for (int r : cone)
                if (mask & (1u << r))
                    avail |= 1u << r;
            for (uint32_t sub = avail; sub; sub = (sub - 1) & avail) {
                if (seen[sub])
                    continue;
                seen[sub] = 1;
                int k = __builtin_popcount(sub);
                if (k <= fan_.dim + 1)
                    faces[static_cast<size_t>(k)].push_back(sub);
            }
        }
        for (auto& level : faces)
            std::sort(level.begin(), level.end());

        // boundary ranks; level k holds faces with k vertices
        std::vector<int> brank(faces.size() + 1, 0);
        for (size_t k = 1; k < faces.size(); ++k) {
            if (faces[k].empty() || faces[k - 1].empty())
                continue;
            std::vector<std::vector<__int128>> mat(
                faces[k].size(), std::vector<__int128>(faces[k - 1].size(), 0));
            for (size_t i = 0; i < faces[k].size(); ++i) {
                uint32_t f = faces[k][i];
                int sign = 1;
                for (uint32_t bits = f; bits;) {
                    uint32_t low = bits & (bits - 1);
                    uint32_t vertex_bit = bits ^ low;
                    uint32_t sub = f ^ vertex_bit;
                    auto pos = std::lower_bound(faces[k - 1].begin(), faces[k - 1].end(), sub);
                    mat[i][static_cast<size_t>(pos - faces[k - 1].begin())] = sign;
                    sign = -sign;
                    bits = low;
                }
            }
            brank[k] = rank_exact(std::move(mat));
        }

        // h^p of the sheaf picks up reduced H^{p-1}; level k of the complex
        // holds (k-1)-simplices, so degree p corresponds to level p+... level
        // index k = (p-1)+1 = p.
        std::vector<Int> out(static_cast<size_t>(fan_.dim) + 1, 0);
        for (int p = 0; p <= fan_.dim; ++p) {
            size_t k = static_cast<size_t>(p);
            Int dim_ck = static_cast<Int>(faces[k].size());
            out[static_cast<size_t>(p)] = dim_ck - brank[k] - brank[k + 1];
        }
        return out;
    }

    const FanDescriptor& fan_;
    std::unordered_map<uint32_t, std::vector<Int>> memo_;
};

} // namespace toric_detail

inline FanDescriptor build_fan(const VarietyDesc& v)
{
    FanDescriptor fan;
    fan.dim = v.dim();
    if (v.kind == VarietyKind::Product) {
        int coord = 0;
        for (size_t f = 0; f < v.params.size(); ++f) {
            int n = static_cast<int>(v.params[f]);
            std::vector<int> frays;
            for (int i = 0; i < n; ++i) {
                std::vector<Int> ray(static_cast<size_t>(fan.dim), 0);
                ray[static_cast<size_t>(coord + i)] = 1;
                frays.push_back(static_cast<int>(fan.rays.size()));
                fan.rays.push_back(ray);
                fan.div_map.emplace_back(v.params.size(), 0);
            }
            std::vector<Int> last(static_cast<size_t>(fan.dim), 0);
            for (int i = 0; i < n; ++i)
                last[static_cast<size_t>(coord + i)] = -1;
            frays.push_back(static_cast<int>(fan.rays.size()));
            fan.rays.push_back(last);
            std::vector<Int> dm(v.params.size(), 0);
            dm[f] = 1; // O(d_f) lives on the "minus" ray of each factor
            fan.div_map.push_back(dm);
            fan.factor_blocks.emplace_back(coord, n);
            fan.factor_rays.push_back(frays);
            coord += n;
        }
        // maximal cones: pick one omitted ray per factor
        std::vector<size_t> omit(v.params.size(), 0);
        while (true) {
            std::vector<int> cone;
            for (size_t f = 0; f < v.params.size(); ++f)
                for (size_t r = 0; r < fan.factor_rays[f].size(); ++r)
                    if (r != omit[f])
                        cone.push_back(fan.factor_rays[f][r]);
            fan.max_cones.push_back(cone);
            size_t f = 0;
            while (f < omit.size() && ++omit[f] == fan.factor_rays[f].size()) {
                omit[f] = 0;
                ++f;
            }
            if (f == omit.size())
                break;
        }
        return fan;
    }
    if (v.kind == VarietyKind::Scroll) {
        // P(O(a_0)+...+O(a_n)) over P^1, twists normalized by a_0. Fiber rays
        // e_1..e_n and -(e_1+...+e_n); base rays e_{n+1} and
        // -e_{n+1} + sum_i (a_i - a_0) e_i.
        int n = v.scroll_fiber_dim();
        Int a0 = v.params[0];
        auto zero = [&] { return std::vector<Int>(static_cast<size_t>(n) + 1, 0); };
        // fiber ray for summand i = 1..n
        for (int i = 1; i <= n; ++i) {
            auto ray = zero();
            ray[static_cast<size_t>(i - 1)] = 1;
            fan.rays.push_back(ray);
            fan.div_map.push_back({0, 0});
        }
        // summand-0 ray
        {
            auto ray = zero();
            for (int i = 0; i < n; ++i)
                ray[static_cast<size_t>(i)] = -1;
            fan.rays.push_back(ray);
            // carries the tautological class: coefficient y for O(x,y)
            fan.div_map.push_back({0, 1});
        }
        int base_plus = static_cast<int>(fan.rays.size());
        {
            auto ray = zero();
            ray[static_cast<size_t>(n)] = 1;
            fan.rays.push_back(ray);
            // carries y*a_0 + (x - y): the O(x,y) base twist
            fan.div_map.push_back({1, a0 - 1});
        }
        int base_minus = static_cast<int>(fan.rays.size());
        {
            auto ray = zero();
            ray[static_cast<size_t>(n)] = -1;
            for (int i = 1; i <= n; ++i)
                ray[static_cast<size_t>(i - 1)] = v.params[static_cast<size_t>(i)] - a0;
            fan.rays.push_back(ray);
            fan.div_map.push_back({0, 0});
        }
        for (int omit = 0; omit <= n; ++omit) {
            for (int base : {base_plus, base_minus}) {
                std::vector<int> cone;
                for (int i = 0; i <= n; ++i)
                    if (i != omit)
                        cone.push_back(i);
                cone.push_back(base);
                fan.max_cones.push_back(cone);
            }
        }
        return fan;
    }
    throw parameter_error("build_fan: only products and scrolls are toric here");
}

struct ToricOptions {
    int box_scale = 1;   // doubled in the box-sufficiency check
    Int box_cap = 400;   // refuse (never mis-answer) beyond this half-width
};

namespace toric_detail {

inline Int box_halfwidth(const FanDescriptor& fan, const std::vector<Int>& a,
                         const ToricOptions& opt)
{
    Int maxa = 0;
    for (Int x : a)
        maxa = std::max(maxa, std::llabs(x));
    Int norm = 1;
    for (const auto& ray : fan.rays) {
        Int s = 0;
        for (Int x : ray)
            s += std::llabs(x);
        norm = std::max(norm, s);
    }
    Int w = (maxa + fan.dim + 1) * norm * opt.box_scale;
    if (w > opt.box_cap)
        throw error("toric character box exceeds cap (" + std::to_string(w) + " > " +
                    std::to_string(opt.box_cap) + ")");
    return w;
}

} // namespace toric_detail

inline CohomVector toric_cohom(const FanDescriptor& fan, const VarietyDesc& v,
                               const DivClass& d, const ToricOptions& opt = {})
{
    v.check_class(d);
    std::vector<Int> a = fan.ray_coeffs(d);
    Int w = toric_detail::box_halfwidth(fan, a, opt);
    toric_detail::MaskCohomology mc(fan);
    CohomVector h(static_cast<size_t>(fan.dim) + 1);

    if (!fan.factor_blocks.empty()) {
        // product fan: supports factor by factor, then combine histograms
        std::vector<std::unordered_map<uint32_t, Int>> hist(fan.factor_blocks.size());
        for (size_t f = 0; f < fan.factor_blocks.size(); ++f) {
            auto [c0, nc] = fan.factor_blocks[f];
            std::vector<Int> m(static_cast<size_t>(nc), -w);
            while (true) {
                uint32_t mask = 0;
                for (int r : fan.factor_rays[f]) {
                    Int dot = 0;
                    for (int k = 0; k < nc; ++k)
                        dot += fan.rays[static_cast<size_t>(r)][static_cast<size_t>(c0 + k)] *
                               m[static_cast<size_t>(k)];
                    if (dot < -a[static_cast<size_t>(r)])
                        mask |= 1u << r;
                }
                hist[f][mask] += 1;
                size_t k = 0;
                while (k < m.size() && ++m[k] > w) {
                    m[k] = -w;
                    ++k;
                }
                if (k == m.size())
                    break;
            }
        }
        // fold the per-factor histograms
        std::unordered_map<uint32_t, Int> acc{{0u, 1}};
        for (const auto& hf : hist) {
            std::unordered_map<uint32_t, Int> next;
            for (const auto& [m1, c1] : acc)
                for (const auto& [m2, c2] : hf)
                    next[m1 | m2] += c1 * c2;
            acc = std::move(next);
        }
        for (const auto& [mask, count] : acc) {
            const auto& dims = mc.dims(mask);
            for (size_t p = 0; p < h.size(); ++p)
                h.h[p] += count * dims[p];
        }
        return h;
    }

    // generic path, scanning the innermost coordinate by segments
    size_t dim = static_cast<size_t>(fan.dim);
    std::vector<Int> m(dim - 1, -w); // outer coordinates
    while (true) {
        // partial dot products over outer coordinates
        std::vector<Int> partial(fan.rays.size(), 0);
        for (size_t r = 0; r < fan.rays.size(); ++r)
            for (size_t k = 0; k + 1 < dim; ++k)
                partial[r] += fan.rays[r][k] * m[k];
        // breakpoints of the support mask as the last coordinate sweeps;
        // membership in the support is monotone in t for each ray
        auto floordiv = [](Int x, Int y) {
            Int q = x / y;
            if (x % y != 0 && ((x < 0) != (y < 0)))
                --q;
            return q;
        };
        std::vector<Int> cuts{-w, w + 1};
        for (size_t r = 0; r < fan.rays.size(); ++r) {
            Int vr = fan.rays[r][dim - 1];
            if (vr == 0)
                continue;
            Int num = -a[r] - partial[r];
            // vr > 0: in support iff t < num/vr, first outside = ceil(num/vr)
            // vr < 0: in support iff t > num/vr, first inside  = floor(num/vr)+1
            Int c = vr > 0 ? floordiv(num + vr - 1, vr) : floordiv(num, vr) + 1;
            cuts.push_back(std::clamp<Int>(c, -w, w + 1));
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t s = 0; s + 1 < cuts.size(); ++s) {
            Int t0 = cuts[s], t1 = cuts[s + 1];
            if (t0 > w)
                break;
            Int count = t1 - t0;
            uint32_t mask = 0;
            for (size_t r = 0; r < fan.rays.size(); ++r)
                if (partial[r] + fan.rays[r][dim - 1] * t0 < -a[r])
                    mask |= 1u << r;
            const auto& dims = mc.dims(mask);
            for (size_t p = 0; p < h.size(); ++p)
                h.h[p] += count * dims[p];
        }
        if (dim == 1)
            break;
        size_t k = 0;
        while (k < m.size() && ++m[k] > w) {
            m[k] = -w;
            ++k;
        }
        if (k == m.size())
            break;
    }
    return h;
}

// Lattice-point count of the section polytope {m : <m, v_r> >= -a_r}; used
// by the calibration invariant h^0(ample) == #points.
inline Int polytope_point_count(const FanDescriptor& fan, const VarietyDesc& v,
                                const DivClass& d, const ToricOptions& opt = {})
{
    v.check_class(d);
    std::vector<Int> a = fan.ray_coeffs(d);
    Int w = toric_detail::box_halfwidth(fan, a, opt);
    size_t dim = static_cast<size_t>(fan.dim);
    std::vector<Int> m(dim, -w);
    Int count = 0;
    while (true) {
        bool inside = true;
        for (size_t r = 0; r < fan.rays.size() && inside; ++r) {
            Int dot = 0;
            for (size_t k = 0; k < dim; ++k)
                dot += fan.rays[r][k] * m[k];
            inside = dot >= -a[r];
        }
        if (inside)
            ++count;
        size_t k = 0;
        while (k < m.size() && ++m[k] > w) {
            m[k] = -w;
            ++k;
        }
        if (k == m.size())
            break;
    }
    return count;
}

} // namespace ulrich
