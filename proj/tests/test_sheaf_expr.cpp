#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ulrich/sheaf_expr.hpp"

using namespace ulrich;

namespace {

SheafExpr L(std::initializer_list<Int> d)
{
    return SheafExpr::line_bundle(DivClass(d));
}

// random expression over small line bundles, Sum/Ext/Twist nodes only
SheafExpr random_expr(std::mt19937& rng, const VarietyDesc& v, int depth)
{
    std::uniform_int_distribution<Int> coeff(-3, 3);
    std::uniform_int_distribution<int> pick(0, 3);
    auto rand_class = [&] {
        DivClass d(std::vector<Int>(static_cast<size_t>(v.picard_rank()), 0));
        for (size_t i = 0; i < d.size(); ++i)
            d[i] = coeff(rng);
        return d;
    };
    if (depth == 0 || pick(rng) == 0)
        return SheafExpr::line_bundle(rand_class());
    switch (pick(rng)) {
    case 1: {
        std::vector<SheafExpr> parts;
        int n = 2 + static_cast<int>(pick(rng) % 2);
        for (int i = 0; i < n; ++i)
            parts.push_back(random_expr(rng, v, depth - 1));
        return SheafExpr::sum(std::move(parts));
    }
    case 2:
        return SheafExpr::ext(random_expr(rng, v, depth - 1),
                              random_expr(rng, v, depth - 1));
    default:
        return SheafExpr::twist(random_expr(rng, v, depth - 1), rand_class());
    }
}

} // namespace

TEST_CASE("expression parser")
{
    REQUIRE(parse_expr("L(2,0)").str() == "L(2,0)");
    REQUIRE(parse_expr(" sum( L(0,1) , L(2,0) ) ").str() == "sum(L(0,1),L(2,0))");
    REQUIRE(parse_expr("ext(sub=L(0,2),quot=L(2,0))").str() ==
            "ext(sub=L(0,2),quot=L(2,0))");
    REQUIRE(parse_expr("tw(G1,(1,1))").str() == "tw(G1,(1,1))");
    REQUIRE(parse_expr("relomega(2)").str() == "relomega(2)");
    REQUIRE(parse_expr("omega(3)").str() == "tensor(L(3),omega)");
    REQUIRE(parse_expr("tensor(L(1,1),G1)").str() == "tensor(L(1,1),G1)");
    REQUIRE_THROWS_AS(parse_expr("ext(L(0,1),L(1,0))"), parameter_error);
    REQUIRE_THROWS_AS(parse_expr("L(2,0) trailing"), parameter_error);
    REQUIRE_THROWS_AS(parse_expr("frob(1)"), parameter_error);
}

TEST_CASE("normalize")
{
    DivClass d{1, -1};
    auto a = L({2, 0}), b = L({0, 1});
    // twists distribute over sums
    auto tw_sum = normalize(SheafExpr::twist(SheafExpr::sum({a, b}), d));
    REQUIRE(tw_sum.str() == "sum(L(1,0),L(3,-1))");
    // twist composition collapses onto the leaf
    auto tw_tw = normalize(SheafExpr::twist(SheafExpr::twist(a, d), d));
    REQUIRE(tw_tw.str() == "L(4,-2)");
    // nested sums flatten
    auto nested = normalize(SheafExpr::sum({SheafExpr::sum({a, b}), L({1, 1})}));
    REQUIRE(nested.str() == "sum(L(0,1),L(1,1),L(2,0))");
}

TEST_CASE("rank and first Chern class")
{
    auto flag = parse_variety("flag6");
    auto g1 = parse_expr("G1");
    auto rc = rank_c1(flag, g1);
    REQUIRE(rc.rank == 2);
    REQUIRE(rc.c1 == DivClass{-1, 0});

    auto e = SheafExpr::ext(L({0, 2}), L({2, 0}));
    rc = rank_c1(flag, e);
    REQUIRE(rc.rank == 2);
    REQUIRE(rc.c1 == DivClass{2, 2});

    auto x = parse_variety("product:1,1,1");
    rc = rank_c1(x, SheafExpr::ext(L({2, 1, 0}), L({1, 0, 2})));
    REQUIRE(rc.rank == 2);
    REQUIRE(rc.c1 == DivClass{3, 1, 2});

    // twist adds rank * d
    rc = rank_c1(flag, SheafExpr::twist(g1, DivClass{1, 1}));
    REQUIRE(rc.c1 == DivClass{1, 2});

    REQUIRE_THROWS_AS(rank_c1(x, g1), parameter_error); // wrong home variety
}

TEST_CASE("evaluation on lines agrees with the closed forms")
{
    std::mt19937 rng(99);
    for (const char* spec : {"product:1,1,1", "scroll:1,2", "scroll:1,1,2", "flag6",
                             "veronese2"}) {
        auto v = parse_variety(spec);
        std::uniform_int_distribution<Int> coeff(-5, 5);
        for (int t = 0; t < 50; ++t) {
            DivClass d(std::vector<Int>(static_cast<size_t>(v.picard_rank()), 0));
            for (size_t i = 0; i < d.size(); ++i)
                d[i] = coeff(rng);
            auto iv = evaluate_cohom(v, SheafExpr::line_bundle(d));
            REQUIRE(iv.is_exact());
            REQUIRE(iv.to_exact() == line_cohomology(v, d));
        }
    }
}

TEST_CASE("evaluation of compound expressions")
{
    auto flag = parse_variety("flag6");
    auto s12 = parse_variety("scroll:1,2");

    SECTION("fully vanishing extension twist")
    {
        auto e = SheafExpr::twist(SheafExpr::ext(L({0, 2}), L({2, 0})), DivClass{-1, -1});
        auto iv = evaluate_cohom(flag, e);
        REQUIRE(iv.is_exact_zero());
    }
    SECTION("sum on the scroll")
    {
        auto iv = evaluate_cohom(s12, SheafExpr::sum({L({0, 1}), L({2, 0})}));
        REQUIRE(iv.is_exact());
        REQUIRE(iv.to_exact() == CohomVector{6, 0, 0});
    }
    SECTION("G1 twisted by (1,1)")
    {
        auto iv = evaluate_cohom(flag, parse_expr("tensor(L(1,1),G1)"));
        REQUIRE(iv.is_exact());
        REQUIRE(iv.to_exact() == CohomVector{9, 0, 0, 0});
    }
    SECTION("frozen G-bundle values")
    {
        struct Case {
            const char* expr;
            CohomVector want;
        };
        const Case cases[] = {
            {"G1", {0, 0, 0, 0}},
            {"G2", {0, 0, 0, 0}},
            {"tensor(L(-1,0),G1)", {0, 1, 0, 0}},
            {"tensor(L(0,-1),G2)", {0, 1, 0, 0}},
            {"tensor(L(0,-2),G1)", {0, 0, 1, 0}},
            {"tensor(L(-2,0),G2)", {0, 0, 1, 0}},
            {"tensor(L(-2,-2),G1)", {0, 0, 0, 3}},
            {"tensor(L(1,-2),G1)", {0, 0, 0, 0}},
            {"tensor(L(-2,1),G2)", {0, 0, 0, 0}},
        };
        for (const auto& c : cases) {
            INFO(c.expr);
            auto iv = evaluate_cohom(flag, parse_expr(c.expr));
            REQUIRE(iv.is_exact());
            REQUIRE(iv.to_exact() == c.want);
        }
    }
    SECTION("nested G1 (x) G2 products")
    {
        struct Case {
            DivClass d;
            CohomVector want;
        };
        // values pinned by the ambient restriction computation
        const Case cases[] = {
            {{-2, 0}, {0, 0, 3, 0}},
            {{0, -2}, {0, 0, 3, 0}},
            {{-1, 1}, {0, 3, 0, 0}},
            {{1, -1}, {0, 3, 0, 0}},
        };
        for (const auto& c : cases) {
            auto e = SheafExpr::tensor(
                SheafExpr::tensor(SheafExpr::line_bundle(c.d), {CatalogKind::G1, 0}),
                {CatalogKind::G2, 0});
            INFO("G1*G2 twist " << c.d.str());
            auto iv = evaluate_cohom(flag, e);
            REQUIRE(iv.is_exact());
            REQUIRE(iv.to_exact() == c.want);
        }
    }
    SECTION("relative cotangent sheaves on scrolls")
    {
        auto iv = cohom_rel_omega_scroll(s12, 1, DivClass{1, 1});
        REQUIRE(iv.is_exact_zero());

        auto s11 = parse_variety("scroll:1,1");
        iv = cohom_rel_omega_scroll(s11, 1, DivClass{0, 0});
        REQUIRE(iv.is_exact());
        REQUIRE(iv.to_exact() == CohomVector{0, 1, 0});

        auto s112 = parse_variety("scroll:1,1,2");
        iv = cohom_rel_omega_scroll(s112, 1, DivClass{0, 0});
        REQUIRE(iv.is_exact());
        REQUIRE(iv.to_exact() == CohomVector{0, 1, 0, 0});
        iv = cohom_rel_omega_scroll(s112, 1, DivClass{-2, 0});
        REQUIRE(iv.is_exact());
        REQUIRE(iv.to_exact() == CohomVector{0, 0, 1, 0});
        // relative Hodge piece in the middle power
        iv = cohom_rel_omega_scroll(s112, 2, DivClass{0, 0});
        REQUIRE(iv.is_exact());
        REQUIRE(iv.to_exact() == CohomVector{0, 0, 1, 0});
        REQUIRE_THROWS_AS(cohom_rel_omega_scroll(s112, 3, DivClass{0, 0}),
                          parameter_error);
    }
}

TEST_CASE("Serre duality on sums of line bundles")
{
    std::mt19937 rng(123);
    for (const char* spec : {"product:1,1,1", "scroll:1,3", "flag6", "veronese2"}) {
        auto v = parse_variety(spec);
        DivClass k = v.canonical_class();
        int dim = v.dim();
        std::uniform_int_distribution<Int> coeff(-4, 4);
        for (int t = 0; t < 40; ++t) {
            std::vector<SheafExpr> parts, dual_parts;
            int n = 1 + t % 3;
            for (int i = 0; i < n; ++i) {
                DivClass d(std::vector<Int>(static_cast<size_t>(v.picard_rank()), 0));
                for (size_t m = 0; m < d.size(); ++m)
                    d[m] = coeff(rng);
                parts.push_back(SheafExpr::line_bundle(d));
                dual_parts.push_back(SheafExpr::line_bundle(k - d));
            }
            auto a = evaluate_cohom(v, SheafExpr::sum(parts)).to_exact();
            auto b = evaluate_cohom(v, SheafExpr::sum(dual_parts)).to_exact();
            for (int i = 0; i <= dim; ++i)
                REQUIRE(a[static_cast<size_t>(i)] == b[static_cast<size_t>(dim - i)]);
        }
    }
}

TEST_CASE("chi additivity on random exact expressions")
{
    std::mt19937 rng(2026);
    for (const char* spec : {"product:1,1,1", "scroll:1,2", "flag6", "veronese2"}) {
        auto v = parse_variety(spec);
        int exact_seen = 0;
        int guard = 0;
        while (exact_seen < 100 && ++guard < 4000) {
            SheafExpr a = random_expr(rng, v, 2), b = random_expr(rng, v, 2);
            auto ia = evaluate_cohom(v, a), ib = evaluate_cohom(v, b);
            auto ie = evaluate_cohom(v, SheafExpr::ext(a, b));
            auto is = evaluate_cohom(v, SheafExpr::sum({a, b}));
            if (!(ia.is_exact() && ib.is_exact()))
                continue;
            Int want = ia.to_exact().euler_char() + ib.to_exact().euler_char();
            if (ie.is_exact()) {
                REQUIRE(ie.to_exact().euler_char() == want);
                ++exact_seen;
            }
            if (is.is_exact())
                REQUIRE(is.to_exact().euler_char() == want);
        }
        INFO(spec);
        REQUIRE(exact_seen == 100);
    }
}

TEST_CASE("intervals shrink monotonically under tighter children")
{
    std::mt19937 rng(9);
    std::uniform_int_distribution<Int> lo(0, 4), width(0, 3);
    auto rand_iv = [&](size_t n) {
        IntervalCohomVector r(n);
        for (auto& b : r.v) {
            b.lo = lo(rng);
            b.hi = b.lo + width(rng);
        }
        return r;
    };
    auto tighten = [&](const IntervalCohomVector& a) {
        IntervalCohomVector r = a;
        for (auto& b : r.v)
            if (b.lo < b.hi) {
                if (lo(rng) % 2)
                    ++b.lo;
                else
                    --b.hi;
            }
        return r;
    };
    auto contains = [](const IntervalCohomVector& outer, const IntervalCohomVector& inner) {
        for (size_t i = 0; i < outer.size(); ++i)
            if (inner.v[i].lo < outer.v[i].lo || inner.v[i].hi > outer.v[i].hi)
                return false;
        return true;
    };
    for (int t = 0; t < 500; ++t) {
        auto a = rand_iv(4), b = rand_iv(4);
        auto ta = tighten(a), tb = tighten(b);
        REQUIRE(contains(les_middle(a, b), les_middle(ta, tb)));
        REQUIRE(contains(les_sub(a, b), les_sub(ta, tb)));
        REQUIRE(contains(les_quot(a, b), les_quot(ta, tb)));
    }
}
