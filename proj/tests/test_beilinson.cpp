#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ulrich/beilinson.hpp"

using namespace ulrich;

namespace {

SheafExpr L(std::initializer_list<Int> d)
{
    return SheafExpr::line_bundle(DivClass(d));
}

// random Sum/Ext shape over two fixed line bundles; returns the counts of
// each end actually used
struct Shape {
    SheafExpr expr;
    Int sub_count, quot_count;
};

Shape random_shape(std::mt19937& rng, const DivClass& sub_end, const DivClass& quot_end)
{
    std::uniform_int_distribution<int> mult(0, 3);
    Int na = mult(rng), nb = mult(rng);
    if (na + nb == 0)
        na = 1;
    std::vector<SheafExpr> leaves;
    for (Int i = 0; i < na; ++i)
        leaves.push_back(SheafExpr::line_bundle(sub_end));
    for (Int i = 0; i < nb; ++i)
        leaves.push_back(SheafExpr::line_bundle(quot_end));
    std::shuffle(leaves.begin(), leaves.end(), rng);
    // combine with random Sum/Ext joins
    std::uniform_int_distribution<int> coin(0, 1);
    while (leaves.size() > 1) {
        SheafExpr a = leaves.back();
        leaves.pop_back();
        SheafExpr b = leaves.back();
        leaves.pop_back();
        leaves.push_back(coin(rng) ? SheafExpr::sum({a, b}) : SheafExpr::ext(a, b));
        std::shuffle(leaves.begin(), leaves.end(), rng);
    }
    return {leaves[0], na, nb};
}

} // namespace

TEST_CASE("collection catalogs")
{
    auto flag_cat = collection_catalog(parse_variety("flag6"));
    REQUIRE(flag_cat.columns.size() == 6);
    // shifts read from the top column down: 2,2,1,1,0,0
    std::vector<int> shifts;
    for (size_t j = flag_cat.columns.size(); j-- > 0;)
        shifts.push_back(flag_cat.columns[j].shift);
    REQUIRE(shifts == std::vector<int>{2, 2, 1, 1, 0, 0});

    auto s12_cat = collection_catalog(parse_variety("scroll:1,2"));
    REQUIRE(s12_cat.columns.size() == 4);
    std::vector<std::string> outputs;
    for (size_t j = s12_cat.columns.size(); j-- > 0;)
        outputs.push_back(s12_cat.columns[j].output_label);
    REQUIRE(outputs ==
            std::vector<std::string>{"O(0,-1)", "O(1,-1)", "O(-1,0)", "O"});

    auto s112_cat = collection_catalog(parse_variety("scroll:1,1,2"));
    REQUIRE(s112_cat.columns.size() == 6);
    REQUIRE(s112_cat.columns[2].output_label == "relomega(1)(0,1)");
    REQUIRE(s112_cat.columns[2].output_rank == 2);

    REQUIRE_THROWS_AS(collection_catalog(parse_variety("product:1,1,1")),
                      parameter_error);
}

TEST_CASE("orthogonality of the catalogs against their dual collections")
{
    for (const char* spec :
         {"flag6", "scroll:1,2", "scroll:2,2", "scroll:1,3", "scroll:1,1,1",
          "scroll:1,1,2"}) {
        auto res = orthogonality_check(parse_variety(spec));
        INFO(spec << ": " << res.detail);
        REQUIRE(res.pass);
    }
}

TEST_CASE("E1 tables")
{
    auto flag = parse_variety("flag6");

    SECTION("structure sheaf occupies a single cell")
    {
        auto tab = e1_table(flag, L({0, 0}));
        Int nonzero = 0;
        for (size_t j = 0; j < tab.columns.size(); ++j)
            for (int t = 0; t <= tab.dim(); ++t) {
                auto band = tab.cells[j].at(t);
                REQUIRE(band.exact());
                if (band.lo != 0) {
                    ++nonzero;
                    REQUIRE(j == 0);
                    REQUIRE(t == 0);
                    REQUIRE(band.lo == 1);
                }
            }
        REQUIRE(nonzero == 1);
    }
    SECTION("normalized twist of the rank-2 mixed sum is diagonal")
    {
        auto a = SheafExpr::twist(SheafExpr::sum({L({0, 2}), L({2, 0})}), DivClass{-2, -2});
        auto tab = e1_table(flag, a);
        REQUIRE(tab.off_diagonal_zero());
        REQUIRE(tab.diagonal_entry(tab.sub_column).lo == 1);  // a at O(-2,0)
        REQUIRE(tab.diagonal_entry(tab.quot_column).lo == 1); // b at O(0,-2)
        auto diag = tab.diagonal_summary();
        REQUIRE(diag.has_value());
    }
    SECTION("scroll table diagonal")
    {
        auto s12 = parse_variety("scroll:1,2");
        auto a = SheafExpr::twist(SheafExpr::sum({L({0, 1}), L({2, 0})}), DivClass{-1, -1});
        auto tab = e1_table(s12, a);
        REQUIRE(tab.off_diagonal_zero());
        REQUIRE(tab.diagonal_entry(1).lo == 1);
        REQUIRE(tab.diagonal_entry(2).lo == 1);
    }
    SECTION("markdown and csv renderings carry outputs and tensors")
    {
        auto tab = e1_table(flag, L({0, 0}));
        std::string md = render_table_markdown(tab);
        REQUIRE(md.find("O(-1,-1)") != std::string::npos);
        REQUIRE(md.find("G1") != std::string::npos);
        std::string csv = render_table_csv(tab);
        REQUIRE(csv.find("degree") == 0);
        auto j = to_json(tab);
        REQUIRE(j["cells"].size() == 6 * 4);
        REQUIRE(j.contains("diagonal"));
    }
}

TEST_CASE("primitive certificates on the named examples")
{
    auto flag = parse_variety("flag6");
    auto s12 = parse_variety("scroll:1,2");

    SECTION("unique extension on the cubic scroll")
    {
        auto cert = primitive_certificate(s12, SheafExpr::ext(L({0, 1}), L({2, 0})));
        REQUIRE(cert.certified == TriState::Yes);
        REQUIRE(cert.hypothesis_status == TriState::Yes);
        REQUIRE(cert.sub_mult == 1);
        REQUIRE(cert.quot_mult == 1);
        REQUIRE(cert.sub_class == DivClass{0, 1});
        REQUIRE(cert.quot_class == DivClass{2, 0});
        REQUIRE(cert.extension_form == "0 -> O(0,1)^1 -> V -> O(2,0)^1 -> 0");
    }
    SECTION("degenerate direct sum on the flag")
    {
        auto cert = primitive_certificate(flag, SheafExpr::sum({L({0, 2}), L({0, 2})}));
        REQUIRE(cert.certified == TriState::Yes);
        REQUIRE(cert.sub_mult == 2);
        REQUIRE(cert.quot_mult == 0);
    }
    SECTION("rank-2 extension on the flag")
    {
        auto cert = primitive_certificate(flag, SheafExpr::ext(L({0, 2}), L({2, 0})));
        REQUIRE(cert.certified == TriState::Yes);
        REQUIRE(cert.hypothesis_status == TriState::Yes);
        REQUIRE(cert.sub_mult == 1);
        REQUIRE(cert.quot_mult == 1);
        REQUIRE(cert.sub_class == DivClass{0, 2});
        REQUIRE(cert.quot_class == DivClass{2, 0});
    }
    SECTION("non-Ulrich input is rejected with the failed twist")
    {
        REQUIRE_THROWS_WITH(primitive_certificate(flag, L({1, 1})),
                            Catch::Matchers::ContainsSubstring("Ulrich"));
    }
}

TEST_CASE("random primitive shapes certify with their construction multiplicities")
{
    std::mt19937 rng(424242);
    struct Target {
        const char* spec;
        DivClass sub_end, quot_end;
    };
    std::vector<Target> targets = {
        {"flag6", {0, 2}, {2, 0}},
        {"scroll:1,2", {0, 1}, {2, 0}},
        {"scroll:2,2", {0, 1}, {3, 0}},
        {"scroll:1,3", {0, 1}, {3, 0}},
        {"scroll:1,1,2", {0, 1}, {3, 0}},
    };
    for (const auto& t : targets) {
        auto v = parse_variety(t.spec);
        for (int trial = 0; trial < 50; ++trial) {
            Shape shape = random_shape(rng, t.sub_end, t.quot_end);
            INFO(t.spec << " shape " << shape.expr.str());
            auto ur = ulrich_check(v, shape.expr);
            REQUIRE(ur.is_ulrich == TriState::Yes);
            auto cert = primitive_certificate(v, shape.expr);
            REQUIRE(cert.certified == TriState::Yes);
            REQUIRE(cert.hypothesis_status == TriState::Yes);
            REQUIRE(cert.table_diagonal);
            REQUIRE(cert.sub_mult == shape.sub_count);
            REQUIRE(cert.quot_mult == shape.quot_count);
            REQUIRE(cert.sub_class == t.sub_end);
            REQUIRE(cert.quot_class == t.quot_end);
            // rank and c1 reconstruction from the diagonal
            RankC1 rc = rank_c1(v, shape.expr);
            REQUIRE(cert.sub_mult + cert.quot_mult == rc.rank);
            REQUIRE(cert.sub_mult * cert.sub_class + cert.quot_mult * cert.quot_class ==
                    rc.c1);
        }
    }
}
