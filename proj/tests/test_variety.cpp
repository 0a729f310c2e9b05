#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "oracle_helpers.hpp"
#include "ulrich/cohomology.hpp"
#include "ulrich/variety.hpp"

using namespace ulrich;

TEST_CASE("variety spec grammar")
{
    auto p = parse_variety("product:1,1,1");
    REQUIRE(p.kind == VarietyKind::Product);
    REQUIRE(p.params == std::vector<Int>{1, 1, 1});
    REQUIRE(p.dim() == 3);
    REQUIRE(p.picard_rank() == 3);

    auto s = parse_variety("scroll:1,2");
    REQUIRE(s.kind == VarietyKind::Scroll);
    REQUIRE(s.dim() == 2);
    REQUIRE(s.scroll_degree() == 3);

    REQUIRE(parse_variety("flag6").dim() == 3);
    REQUIRE(parse_variety("veronese2").dim() == 2);

    REQUIRE_THROWS_AS(parse_variety("scroll:2,1"), parameter_error);
    REQUIRE_THROWS_AS(parse_variety("scroll:0,1"), parameter_error);
    REQUIRE_THROWS_AS(parse_variety("product:1,0"), parameter_error);
    REQUIRE_THROWS_AS(parse_variety("product:"), parameter_error);
    REQUIRE_THROWS_AS(parse_variety("product:1,,2"), parameter_error);
    REQUIRE_THROWS_AS(parse_variety("grassmannian:2,4"), parameter_error);
    REQUIRE_THROWS_WITH(parse_variety("product:1,x"),
                        Catch::Matchers::ContainsSubstring("'x'"));
}

TEST_CASE("invariants report")
{
    auto flag = invariants_report(parse_variety("flag6"));
    REQUIRE(flag.degree == 6);
    REQUIRE(flag.dim == 3);
    REQUIRE(flag.ambient_dim == 7);
    REQUIRE(flag.canonical == DivClass{-2, -2});

    REQUIRE(invariants_report(parse_variety("product:1,1,1")).degree == 6);

    auto s13 = invariants_report(parse_variety("scroll:1,3"));
    REQUIRE(s13.degree == 4);
    // -2H + 2F in (x,y) coordinates is (0,-2)
    REQUIRE(s13.canonical == DivClass{0, -2});

    auto v2 = invariants_report(parse_variety("veronese2"));
    REQUIRE(v2.degree == 4);
    REQUIRE(v2.ambient_dim == 5);
    REQUIRE(v2.canonical == DivClass{-3});

    auto s12 = invariants_report(parse_variety("scroll:1,2"));
    REQUIRE(s12.degree == 3);
    REQUIRE(s12.ambient_dim == 4);
    REQUIRE(s12.canonical == DivClass{-1, -2});
}

TEST_CASE("product degree agrees with the intersection-ring expansion")
{
    std::vector<std::vector<Int>> cases;
    // all products with total dimension <= 5
    std::function<void(std::vector<Int>, Int)> gen = [&](std::vector<Int> cur, Int left) {
        if (!cur.empty())
            cases.push_back(cur);
        for (Int next = 1; next <= left; ++next) {
            auto c = cur;
            c.push_back(next);
            gen(c, left - next);
        }
    };
    gen({}, 5);
    for (const auto& dims : cases) {
        auto v = VarietyDesc::product(dims);
        INFO("product " << v.spec_string());
        REQUIRE(v.degree() == test_oracle::product_degree_via_ring(dims));
    }
}

TEST_CASE("ambient dimension matches sections of the hyperplane class")
{
    for (const char* spec : {"product:1,1,1", "product:2,2", "product:1,3", "scroll:1,2",
                             "scroll:2,2", "scroll:1,3", "scroll:1,1,1", "scroll:1,1,2",
                             "flag6", "veronese2"}) {
        auto v = parse_variety(spec);
        INFO(spec);
        CohomVector h = line_cohomology(v, v.hyperplane_class());
        REQUIRE(h[0] == v.ambient_dim() + 1);
    }
}

TEST_CASE("Serre duality pivots on the canonical class")
{
    std::mt19937 rng(20260810);
    for (const char* spec : {"product:1,1,1", "product:1,2", "product:2,2", "scroll:1,2",
                             "scroll:2,2", "scroll:1,3", "scroll:1,1,1", "scroll:1,1,2",
                             "flag6", "veronese2"}) {
        auto v = parse_variety(spec);
        DivClass k = v.canonical_class();
        int dim = v.dim();
        std::uniform_int_distribution<Int> coeff(-6, 6);
        for (int trial = 0; trial < 200; ++trial) {
            DivClass d(std::vector<Int>(static_cast<size_t>(v.picard_rank()), 0));
            for (size_t i = 0; i < d.size(); ++i)
                d[i] = coeff(rng);
            CohomVector lhs = line_cohomology(v, d);
            CohomVector rhs = line_cohomology(v, k - d);
            INFO(spec << " class " << d.str());
            for (int i = 0; i <= dim; ++i)
                REQUIRE(lhs[static_cast<size_t>(i)] ==
                        rhs[static_cast<size_t>(dim - i)]);
        }
    }
}
