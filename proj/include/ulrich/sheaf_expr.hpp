#pragma once

#include <cctype>
#include <cstring>

#include "ulrich/cohomology.hpp"

namespace ulrich {

// ---------------------------------------------------------------------------
// Sheaf expressions: line bundles closed under direct sum, extension, twist
// and tensoring with the fixed catalog bundles. Evaluation returns exact
// dimensions when the defining exact sequences force them and sound
// per-degree intervals otherwise.
// ---------------------------------------------------------------------------

enum class CatalogKind {
    G1,      // pullback of Omega^1(1) from the first P^2 factor (flag)
    G2,      // same from the second factor (flag)
    RelOmega, // Omega^j of the scroll over P^1
    OmegaP2, // Omega^1 on P^2 (Veronese surface entry)
};

struct CatalogBundle {
    CatalogKind kind;
    int j = 0; // exterior power for RelOmega

    std::string str() const
    {
        switch (kind) {
        case CatalogKind::G1:
            return "G1";
        case CatalogKind::G2:
            return "G2";
        case CatalogKind::RelOmega:
            return "relomega(" + std::to_string(j) + ")";
        case CatalogKind::OmegaP2:
            return "omega";
        }
        return "?";
    }
    bool operator==(const CatalogBundle& o) const { return kind == o.kind && j == o.j; }
};

struct SheafExpr {
    enum class Node { Line, Sum, Ext, Twist, Tensor };

    Node node = Node::Line;
    DivClass line;                   // Line
    std::vector<SheafExpr> children; // Sum: all; Ext: {sub, quot}; Twist/Tensor: {child}
    DivClass twist_class;            // Twist
    CatalogBundle bundle{CatalogKind::G1, 0}; // Tensor

    static SheafExpr line_bundle(DivClass d)
    {
        SheafExpr e;
        e.node = Node::Line;
        e.line = std::move(d);
        return e;
    }
    static SheafExpr sum(std::vector<SheafExpr> parts)
    {
        if (parts.empty())
            throw parameter_error("sum() needs at least one summand");
        SheafExpr e;
        e.node = Node::Sum;
        e.children = std::move(parts);
        return e;
    }
    static SheafExpr ext(SheafExpr sub, SheafExpr quot)
    {
        SheafExpr e;
        e.node = Node::Ext;
        e.children = {std::move(sub), std::move(quot)};
        return e;
    }
    static SheafExpr twist(SheafExpr child, DivClass d)
    {
        SheafExpr e;
        e.node = Node::Twist;
        e.children = {std::move(child)};
        e.twist_class = std::move(d);
        return e;
    }
    static SheafExpr tensor(SheafExpr child, CatalogBundle b)
    {
        SheafExpr e;
        e.node = Node::Tensor;
        e.children = {std::move(child)};
        e.bundle = b;
        return e;
    }

    const SheafExpr& sub() const { return children[0]; }
    const SheafExpr& quot() const { return children[1]; }

    std::string str() const
    {
        switch (node) {
        case Node::Line: {
            std::string s = "L" + line.str();
            return s;
        }
        case Node::Sum: {
            std::string s = "sum(";
            for (size_t i = 0; i < children.size(); ++i)
                s += (i ? "," : "") + children[i].str();
            return s + ")";
        }
        case Node::Ext:
            return "ext(sub=" + children[0].str() + ",quot=" + children[1].str() + ")";
        case Node::Twist:
            return "tw(" + children[0].str() + "," + twist_class.str() + ")";
        case Node::Tensor:
            if (children[0].node == Node::Line && children[0].line.size() > 0) {
                bool zero = true;
                for (size_t i = 0; i < children[0].line.size(); ++i)
                    zero = zero && children[0].line[i] == 0;
                if (zero)
                    return bundle.str();
            }
            return "tensor(" + children[0].str() + "," + bundle.str() + ")";
        }
        return "?";
    }
};

// --------------------------- catalog bookkeeping ---------------------------

inline void check_catalog_home(const VarietyDesc& v, const CatalogBundle& b)
{
    switch (b.kind) {
    case CatalogKind::G1:
    case CatalogKind::G2:
        if (v.kind != VarietyKind::FlagF)
            throw parameter_error(b.str() + " lives on flag6, not on " + v.spec_string());
        return;
    case CatalogKind::RelOmega:
        if (v.kind != VarietyKind::Scroll)
            throw parameter_error("relomega lives on scrolls, not on " + v.spec_string());
        if (b.j < 1 || b.j > v.scroll_fiber_dim())
            throw parameter_error("relomega exterior power " + std::to_string(b.j) +
                                  " out of range 1.." +
                                  std::to_string(v.scroll_fiber_dim()));
        return;
    case CatalogKind::OmegaP2:
        if (v.kind != VarietyKind::Veronese2)
            throw parameter_error("omega lives on veronese2, not on " + v.spec_string());
        return;
    }
}

inline Int catalog_rank(const VarietyDesc& v, const CatalogBundle& b)
{
    check_catalog_home(v, b);
    switch (b.kind) {
    case CatalogKind::G1:
    case CatalogKind::G2:
    case CatalogKind::OmegaP2:
        return 2;
    case CatalogKind::RelOmega:
        return binomial(v.scroll_fiber_dim(), b.j);
    }
    return 0;
}

inline DivClass catalog_c1(const VarietyDesc& v, const CatalogBundle& b)
{
    check_catalog_home(v, b);
    switch (b.kind) {
    case CatalogKind::G1:
        return DivClass{-1, 0};
    case CatalogKind::G2:
        return DivClass{0, -1};
    case CatalogKind::OmegaP2:
        return DivClass{-3};
    case CatalogKind::RelOmega: {
        Int n = v.scroll_fiber_dim();
        Int c = v.scroll_degree();
        return binomial(n - 1, b.j - 1) * DivClass{c - n - 1, -n - 1};
    }
    }
    return {};
}

struct RankC1 {
    Int rank;
    DivClass c1;
};

inline RankC1 rank_c1(const VarietyDesc& v, const SheafExpr& e)
{
    switch (e.node) {
    case SheafExpr::Node::Line:
        v.check_class(e.line);
        return {1, e.line};
    case SheafExpr::Node::Sum: {
        RankC1 r{0, DivClass(std::vector<Int>(static_cast<size_t>(v.picard_rank()), 0))};
        for (const auto& c : e.children) {
            RankC1 rc = rank_c1(v, c);
            r.rank += rc.rank;
            r.c1 = r.c1 + rc.c1;
        }
        return r;
    }
    case SheafExpr::Node::Ext: {
        RankC1 a = rank_c1(v, e.sub()), b = rank_c1(v, e.quot());
        return {a.rank + b.rank, a.c1 + b.c1};
    }
    case SheafExpr::Node::Twist: {
        v.check_class(e.twist_class);
        RankC1 a = rank_c1(v, e.children[0]);
        return {a.rank, a.c1 + a.rank * e.twist_class};
    }
    case SheafExpr::Node::Tensor: {
        RankC1 a = rank_c1(v, e.children[0]);
        Int rb = catalog_rank(v, e.bundle);
        return {a.rank * rb, rb * a.c1 + a.rank * catalog_c1(v, e.bundle)};
    }
    }
    throw error("bad node");
}

// ------------------------------- normalize ---------------------------------
// Twists pushed to leaves, nested sums flattened, children sorted by their
// printed form. Evaluation is invariant under normalization.

inline SheafExpr normalize_impl(const SheafExpr& e, const DivClass* pending)
{
    auto shifted_line = [&](const DivClass& d) {
        return SheafExpr::line_bundle(pending ? d + *pending : d);
    };
    switch (e.node) {
    case SheafExpr::Node::Line:
        return shifted_line(e.line);
    case SheafExpr::Node::Twist: {
        DivClass d = pending ? e.twist_class + *pending : e.twist_class;
        return normalize_impl(e.children[0], &d);
    }
    case SheafExpr::Node::Sum: {
        std::vector<SheafExpr> parts;
        for (const auto& c : e.children) {
            SheafExpr n = normalize_impl(c, pending);
            if (n.node == SheafExpr::Node::Sum)
                for (auto& p : n.children)
                    parts.push_back(std::move(p));
            else
                parts.push_back(std::move(n));
        }
        std::sort(parts.begin(), parts.end(),
                  [](const SheafExpr& a, const SheafExpr& b) { return a.str() < b.str(); });
        if (parts.size() == 1)
            return parts[0];
        return SheafExpr::sum(std::move(parts));
    }
    case SheafExpr::Node::Ext:
        return SheafExpr::ext(normalize_impl(e.sub(), pending),
                              normalize_impl(e.quot(), pending));
    case SheafExpr::Node::Tensor:
        return SheafExpr::tensor(normalize_impl(e.children[0], pending), e.bundle);
    }
    throw error("bad node");
}

inline SheafExpr normalize(const SheafExpr& e)
{
    return normalize_impl(e, nullptr);
}

// ------------------------------ evaluation ---------------------------------

namespace eval_detail {

inline SheafExpr twisted(const SheafExpr& e, const DivClass& d)
{
    return normalize(SheafExpr::twist(e, d));
}

struct Evaluator {
    const VarietyDesc& v;
    CohomCache* cache;
    size_t degrees;

    IntervalCohomVector eval(const SheafExpr& e, bool allow_serre = true) const
    {
        switch (e.node) {
        case SheafExpr::Node::Line:
            return IntervalCohomVector::exact(line_cohomology(v, e.line, cache));
        case SheafExpr::Node::Sum: {
            IntervalCohomVector acc(degrees);
            for (const auto& c : e.children)
                acc = acc + eval(c, allow_serre);
            return acc;
        }
        case SheafExpr::Node::Ext:
            return les_middle(eval(e.sub(), allow_serre), eval(e.quot(), allow_serre));
        case SheafExpr::Node::Twist:
            return eval(normalize(e), allow_serre);
        case SheafExpr::Node::Tensor:
            return eval_tensor(e, allow_serre);
        }
        throw error("bad node");
    }

    IntervalCohomVector eval_tensor(const SheafExpr& e, bool allow_serre) const
    {
        const SheafExpr& child = e.children[0];
        check_catalog_home(v, e.bundle);
        // distribute over sums and extensions first
        switch (child.node) {
        case SheafExpr::Node::Sum: {
            IntervalCohomVector acc(degrees);
            for (const auto& c : child.children)
                acc = acc + eval_tensor(SheafExpr::tensor(c, e.bundle), allow_serre);
            return acc;
        }
        case SheafExpr::Node::Ext:
            return les_middle(
                eval_tensor(SheafExpr::tensor(child.sub(), e.bundle), allow_serre),
                eval_tensor(SheafExpr::tensor(child.quot(), e.bundle), allow_serre));
        case SheafExpr::Node::Twist:
            return eval_tensor(SheafExpr::tensor(normalize(child), e.bundle), allow_serre);
        default:
            break;
        }

        switch (e.bundle.kind) {
        case CatalogKind::OmegaP2: {
            if (child.node != SheafExpr::Node::Line)
                throw parameter_error("omega only tensors line bundles");
            return IntervalCohomVector::exact(cohom_pn(2, 1, child.line[0]));
        }
        case CatalogKind::G1:
        case CatalogKind::G2:
            return eval_g(child, e.bundle, allow_serre);
        case CatalogKind::RelOmega:
            return eval_rel_omega(child, e.bundle.j, allow_serre);
        }
        throw error("bad bundle");
    }

    // child (x) G_i on the flag, via the two defining sequences
    //   0 -> O(-2h_i) -> O(-h_i)^3 -> G_i -> 0
    //   0 -> G_i -> O^3 -> O(h_i) -> 0
    // tensored with child, plus Serre duality for line children.
    IntervalCohomVector eval_g(const SheafExpr& child, CatalogBundle b,
                               bool allow_serre) const
    {
        DivClass h = b.kind == CatalogKind::G1 ? DivClass{1, 0} : DivClass{0, 1};
        IntervalCohomVector quot_route =
            les_quot(eval(twisted(child, -2 * h), allow_serre),
                     scale(3, eval(twisted(child, -1 * h), allow_serre)));
        IntervalCohomVector sub_route = les_sub(scale(3, eval(child, allow_serre)),
                                                eval(twisted(child, h), allow_serre));
        IntervalCohomVector out = IntervalCohomVector::intersect(quot_route, sub_route);
        if (allow_serre && child.node == SheafExpr::Node::Line) {
            // (G_i (x) O(d))^dual (x) K = G_i (x) O(-d - c1(G_i) + K)
            DivClass d = child.line;
            DivClass dual = -d - catalog_c1(v, b) + v.canonical_class();
            IntervalCohomVector s =
                eval_tensor(SheafExpr::tensor(SheafExpr::line_bundle(dual), b), false)
                    .reversed();
            out = IntervalCohomVector::intersect(out, s);
        }
        return out;
    }

    // child (x) Omega^j of the scroll over P^1, spliced through
    //   0 -> Omega^i(L) -> Wedge^i B (x) L(-i,-i) -> Omega^{i-1}(L) -> 0
    // upward from Omega^0 = O and downward from Omega^n = O(c-n-1,-n-1).
    IntervalCohomVector eval_rel_omega(const SheafExpr& child, int j,
                                       bool allow_serre) const
    {
        Int n = v.scroll_fiber_dim();
        IntervalCohomVector up = chain_up(child, j, allow_serre);
        IntervalCohomVector down = chain_down(child, j, allow_serre);
        IntervalCohomVector out = IntervalCohomVector::intersect(up, down);
        if (allow_serre && child.node == SheafExpr::Node::Line) {
            // Omega^j dual = Omega^{n-j} (x) relative-canonical dual, so
            // h^q(Omega^j(L)) = h^{dim-q}(Omega^{n-j}(-L) (x) O(-2,0)).
            DivClass dual = -child.line + DivClass{-2, 0};
            SheafExpr dchild = SheafExpr::line_bundle(dual);
            IntervalCohomVector s;
            if (n - j == 0)
                s = eval(twisted(dchild, DivClass{0, 0}), false);
            else
                s = IntervalCohomVector::intersect(chain_up(dchild, static_cast<int>(n) - j, false),
                                                   chain_down(dchild, static_cast<int>(n) - j, false));
            out = IntervalCohomVector::intersect(out, s.reversed());
        }
        return out;
    }

    // Wedge^m of B = O(a_0,0)+...+O(a_n,0), tensored with child(-m,-m).
    IntervalCohomVector wedge_term(const SheafExpr& child, int m, bool allow_serre) const
    {
        IntervalCohomVector acc(degrees);
        Int n = v.scroll_fiber_dim();
        std::vector<int> idx(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            idx[static_cast<size_t>(i)] = i;
        while (true) {
            Int s = 0;
            for (int i : idx)
                s += v.params[static_cast<size_t>(i)];
            acc = acc + eval(twisted(child, DivClass{s - m, -m}), allow_serre);
            int k = m - 1;
            while (k >= 0 && idx[static_cast<size_t>(k)] == static_cast<int>(n) - (m - 1 - k))
                --k;
            if (k < 0)
                break;
            ++idx[static_cast<size_t>(k)];
            for (int i = k + 1; i < m; ++i)
                idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
        }
        return acc;
    }

    IntervalCohomVector chain_up(const SheafExpr& child, int j, bool allow_serre) const
    {
        IntervalCohomVector cur = eval(child, allow_serre); // Omega^0 = O
        for (int m = 1; m <= j; ++m)
            cur = les_sub(wedge_term(child, m, allow_serre), cur);
        return cur;
    }

    IntervalCohomVector chain_down(const SheafExpr& child, int j, bool allow_serre) const
    {
        Int n = v.scroll_fiber_dim();
        Int c = v.scroll_degree();
        IntervalCohomVector cur =
            eval(twisted(child, DivClass{c - n - 1, -n - 1}), allow_serre); // Omega^n
        for (int m = static_cast<int>(n); m > j; --m)
            cur = les_quot(cur, wedge_term(child, m, allow_serre));
        return cur;
    }
};

} // namespace eval_detail

inline IntervalCohomVector evaluate_cohom(const VarietyDesc& v, const SheafExpr& e,
                                          CohomCache* cache = &global_cohom_cache())
{
    eval_detail::Evaluator ev{v, cache, static_cast<size_t>(v.dim()) + 1};
    return ev.eval(normalize(e));
}

// Cohomology of Omega^j of the scroll over P^1, twisted by d.
inline IntervalCohomVector cohom_rel_omega_scroll(const VarietyDesc& v, int j,
                                                  const DivClass& d,
                                                  CohomCache* cache = &global_cohom_cache())
{
    if (v.kind != VarietyKind::Scroll)
        throw parameter_error("cohom_rel_omega_scroll expects a scroll");
    return evaluate_cohom(
        v, SheafExpr::tensor(SheafExpr::line_bundle(d), {CatalogKind::RelOmega, j}), cache);
}

// ------------------------------ expression parser --------------------------
// Grammar (whitespace-insensitive):
//   L(2,0) | sum(e1,e2,...) | ext(sub=e1,quot=e2) | tw(e,(a,b))
//   | G1 | G2 | relomega(j) | omega(t)

namespace expr_detail {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    void skip()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eat(char c)
    {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!eat(c))
            throw parameter_error(std::string("expected '") + c + "' at position " +
                                  std::to_string(pos) + " in expression");
    }
    bool match(const char* kw)
    {
        skip();
        size_t n = std::strlen(kw);
        if (s.compare(pos, n, kw) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    Int integer()
    {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
            ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (start == pos || (pos - start == 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw parameter_error("expected integer at position " + std::to_string(start) +
                                  " in expression");
        return std::stoll(s.substr(start, pos - start));
    }
    DivClass tuple()
    {
        expect('(');
        DivClass d;
        d.c.push_back(integer());
        while (eat(','))
            d.c.push_back(integer());
        expect(')');
        return d;
    }
    SheafExpr expr()
    {
        skip();
        if (match("sum")) {
            expect('(');
            std::vector<SheafExpr> parts{expr()};
            while (eat(','))
                parts.push_back(expr());
            expect(')');
            return SheafExpr::sum(std::move(parts));
        }
        if (match("ext")) {
            expect('(');
            if (!match("sub="))
                throw parameter_error("ext() expects sub=");
            SheafExpr sub = expr();
            expect(',');
            if (!match("quot="))
                throw parameter_error("ext() expects quot=");
            SheafExpr quot = expr();
            expect(')');
            return SheafExpr::ext(std::move(sub), std::move(quot));
        }
        if (match("tw")) {
            expect('(');
            SheafExpr child = expr();
            expect(',');
            DivClass d = tuple();
            expect(')');
            return SheafExpr::twist(std::move(child), std::move(d));
        }
        if (match("tensor")) {
            expect('(');
            SheafExpr child = expr();
            expect(',');
            SheafExpr b = expr();
            expect(')');
            if (b.node != SheafExpr::Node::Tensor)
                throw parameter_error("tensor() expects a catalog bundle as second argument");
            return SheafExpr::tensor(std::move(child), b.bundle);
        }
        if (match("relomega")) {
            expect('(');
            Int j = integer();
            expect(')');
            return SheafExpr::tensor(SheafExpr::line_bundle(DivClass{0, 0}),
                                     {CatalogKind::RelOmega, static_cast<int>(j)});
        }
        if (match("omega")) {
            skip();
            DivClass t{0};
            if (pos < s.size() && s[pos] == '(') {
                expect('(');
                t = DivClass{integer()};
                expect(')');
            }
            return SheafExpr::tensor(SheafExpr::line_bundle(t), {CatalogKind::OmegaP2, 0});
        }
        if (match("G1"))
            return SheafExpr::tensor(SheafExpr::line_bundle(DivClass{0, 0}),
                                     {CatalogKind::G1, 0});
        if (match("G2"))
            return SheafExpr::tensor(SheafExpr::line_bundle(DivClass{0, 0}),
                                     {CatalogKind::G2, 0});
        if (match("L"))
            return SheafExpr::line_bundle(tuple());
        throw parameter_error("unrecognized expression at position " + std::to_string(pos) +
                              ": '" + s.substr(pos, 12) + "'");
    }
};

} // namespace expr_detail

inline SheafExpr parse_expr(const std::string& text)
{
    expr_detail::Parser p{text};
    SheafExpr e = p.expr();
    p.skip();
    if (p.pos != text.size())
        throw parameter_error("trailing characters in expression at position " +
                              std::to_string(p.pos));
    return e;
}

} // namespace ulrich
