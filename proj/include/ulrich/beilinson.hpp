#pragma once

#include "ulrich/analyzer.hpp"

namespace ulrich {

// ---------------------------------------------------------------------------
// Exceptional-collection catalogs for the flag threefold and the scrolls,
// orthogonality verification against the right dual collection, E1 tables,
// and the primitive-Ulrich certification pipelines.
// ---------------------------------------------------------------------------

struct CatalogColumn {
    SheafExpr tensor_object;   // what E1 cells tensor the input with
    int shift;                 // homological shift of the collection object
    std::string output_label;  // display name of the column's output sheaf
    Int output_rank;
    DivClass output_c1;
    SheafExpr pairing_dual;    // right-dual object used by the orthogonality check
    int diagonal_degree;       // total degree of the column's surviving cell
};

struct CollectionCatalog {
    VarietyDesc variety;
    std::vector<CatalogColumn> columns; // index j = 0 .. size-1
    size_t sub_column;  // certificate reads a here
    size_t quot_column; // and b here
};

namespace beilinson_detail {

inline std::string line_label(const DivClass& d)
{
    return "O" + d.str();
}

inline SheafExpr line_expr(DivClass d)
{
    return SheafExpr::line_bundle(std::move(d));
}

inline SheafExpr g_expr(CatalogKind k, DivClass tw)
{
    return SheafExpr::tensor(SheafExpr::line_bundle(std::move(tw)), {k, 0});
}

inline SheafExpr rel_omega_expr(int j, DivClass tw)
{
    return SheafExpr::tensor(SheafExpr::line_bundle(std::move(tw)),
                             {CatalogKind::RelOmega, j});
}

// a (x) b where a is built from line bundles and catalog factors only;
// b may be any expression
inline SheafExpr expr_product(const SheafExpr& a, const SheafExpr& b)
{
    if (a.node == SheafExpr::Node::Line)
        return SheafExpr::twist(b, a.line);
    if (a.node == SheafExpr::Node::Tensor)
        return SheafExpr::tensor(expr_product(a.children[0], b), a.bundle);
    throw parameter_error("tensor factor must be a line bundle or catalog bundle");
}

} // namespace beilinson_detail

inline CollectionCatalog collection_catalog(const VarietyDesc& v)
{
    using namespace beilinson_detail;
    CollectionCatalog cat;
    cat.variety = v;
    if (v.kind == VarietyKind::FlagF) {
        // columns j = 0..5, shifts (0,0,1,1,2,2)
        auto g1 = CatalogKind::G1;
        auto g2 = CatalogKind::G2;
        cat.columns = {
            {line_expr({0, 0}), 0, "O", 1, {0, 0}, line_expr({0, 0}), 0},
            {g_expr(g1, {0, 0}), 0, "O(-1,0)", 1, {-1, 0}, line_expr({-1, 0}), 2},
            {g_expr(g2, {0, 0}), 1, "O(0,-1)", 1, {0, -1}, line_expr({0, -1}), 2},
            {line_expr({0, -1}), 1, "O(0,-2)", 1, {0, -2}, g_expr(g1, {0, -1}), 2},
            {line_expr({-1, 0}), 2, "O(-2,0)", 1, {-2, 0}, g_expr(g2, {-1, 0}), 2},
            {line_expr({-1, -1}), 2, "O(-1,-1)", 1, {-1, -1}, line_expr({-1, -1}), 3},
        };
        cat.sub_column = 4;
        cat.quot_column = 3;
        return cat;
    }
    if (v.kind == VarietyKind::Scroll) {
        Int n = v.scroll_fiber_dim();
        Int c = v.scroll_degree();
        if (n < 1)
            throw parameter_error("scroll catalog needs fiber dimension >= 1");
        cat.columns.resize(2 * static_cast<size_t>(n) + 2);
        auto& cols = cat.columns;
        cols[0] = {line_expr({0, 0}), 0, "O", 1, {0, 0}, line_expr({0, 0}), 0};
        cols[1] = {line_expr({-1, 0}), 0, "O(-1,0)", 1, {-1, 0}, line_expr({-1, 0}), 1};
        for (int m = 1; m + 1 <= n; ++m) {
            // middle columns: relative cotangent powers
            DivClass even_tw{m - 1, m}, odd_tw{m - 2, m};
            Int rk = binomial(n, m);
            DivClass base_c1 = binomial(n - 1, m - 1) * DivClass{c - n - 1, -n - 1};
            size_t j_even = 2 * static_cast<size_t>(m);
            size_t j_odd = j_even + 1;
            cols[j_even] = {line_expr({-m + 1, -m}),
                            m,
                            "relomega(" + std::to_string(m) + ")(" + std::to_string(m - 1) +
                                "," + std::to_string(m) + ")",
                            rk,
                            base_c1 + rk * even_tw,
                            rel_omega_expr(m, even_tw),
                            m};
            cols[j_odd] = {line_expr({-m, -m}),
                           m,
                           "relomega(" + std::to_string(m) + ")(" + std::to_string(m - 2) +
                               "," + std::to_string(m) + ")",
                           rk,
                           base_c1 + rk * odd_tw,
                           rel_omega_expr(m, odd_tw),
                           m + 1};
        }
        size_t j2n = 2 * static_cast<size_t>(n);
        cols[j2n] = {line_expr({-n + 1, -n}),
                     static_cast<int>(n),
                     line_label({c - 2, -1}),
                     1,
                     {c - 2, -1},
                     line_expr({c - 2, -1}),
                     static_cast<int>(n)};
        cols[j2n + 1] = {line_expr({-n, -n}),
                         static_cast<int>(n),
                         line_label({c - 3, -1}),
                         1,
                         {c - 3, -1},
                         line_expr({c - 3, -1}),
                         static_cast<int>(n) + 1};
        cat.sub_column = 1;
        cat.quot_column = j2n;
        return cat;
    }
    throw parameter_error("no exceptional-collection catalog for " + v.spec_string());
}

// ------------------------------ orthogonality ------------------------------

struct OrthogonalityResult {
    bool pass = true;
    size_t bad_i = 0, bad_j = 0;
    int bad_degree = 0;
    std::string detail;
};

// Pairs every column's tensor object against every column's right-dual
// object: the matrix must be the identity pattern, with the (i,i) pairing a
// one-dimensional space concentrated in degree i - shift_i.
inline OrthogonalityResult orthogonality_check(const VarietyDesc& v,
                                               CohomCache* cache = &global_cohom_cache())
{
    CollectionCatalog cat = collection_catalog(v);
    OrthogonalityResult res;
    int dim = v.dim();
    for (size_t i = 0; i < cat.columns.size(); ++i)
        for (size_t j = 0; j < cat.columns.size(); ++j) {
            SheafExpr prod = beilinson_detail::expr_product(cat.columns[i].tensor_object,
                                                            cat.columns[j].pairing_dual);
            IntervalCohomVector iv = evaluate_cohom(v, prod, cache);
            int want_deg = static_cast<int>(i) - cat.columns[i].shift;
            for (int t = 0; t <= dim; ++t) {
                Int want = (i == j && t == want_deg) ? 1 : 0;
                auto band = iv.at(t);
                if (band.lo != want || band.hi != want) {
                    res.pass = false;
                    res.bad_i = i;
                    res.bad_j = j;
                    res.bad_degree = t;
                    res.detail = "pairing (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") degree " + std::to_string(t) + " is [" +
                                 std::to_string(band.lo) + "," + std::to_string(band.hi) +
                                 "], expected " + std::to_string(want);
                    return res;
                }
            }
        }
    return res;
}

// --------------------------------- E1 table --------------------------------

struct BeilinsonTable {
    VarietyDesc variety;
    std::vector<CatalogColumn> columns;
    std::vector<IntervalCohomVector> cells; // per column, indexed by total degree
    size_t sub_column, quot_column;

    int dim() const { return variety.dim(); }

    bool off_diagonal_zero() const
    {
        for (size_t j = 0; j < columns.size(); ++j)
            for (int t = 0; t <= dim(); ++t) {
                if (t == columns[j].diagonal_degree)
                    continue;
                auto band = cells[j].at(t);
                if (band.lo != 0 || band.hi != 0)
                    return false;
            }
        return true;
    }
    IntervalCohomVector::Band diagonal_entry(size_t j) const
    {
        return cells[j].at(columns[j].diagonal_degree);
    }
    // multiplicities on the diagonal, when everything else vanishes exactly
    std::optional<std::vector<Int>> diagonal_summary() const
    {
        if (!off_diagonal_zero())
            return std::nullopt;
        std::vector<Int> mult;
        for (size_t j = 0; j < columns.size(); ++j) {
            auto band = diagonal_entry(j);
            if (!band.exact())
                return std::nullopt;
            mult.push_back(band.lo);
        }
        return mult;
    }
};

inline BeilinsonTable e1_table(const VarietyDesc& v, const SheafExpr& a,
                               CohomCache* cache = &global_cohom_cache())
{
    CollectionCatalog cat = collection_catalog(v);
    BeilinsonTable tab;
    tab.variety = v;
    tab.columns = cat.columns;
    tab.sub_column = cat.sub_column;
    tab.quot_column = cat.quot_column;
    for (const auto& col : cat.columns)
        tab.cells.push_back(
            evaluate_cohom(v, beilinson_detail::expr_product(col.tensor_object, a), cache));
    return tab;
}

// ------------------------------ certification ------------------------------

struct PrimitiveCertificate {
    TriState hypothesis_status = TriState::Unknown;
    bool table_diagonal = false;
    Int sub_mult = 0, quot_mult = 0; // (a, b)
    DivClass sub_class, quot_class;  // extension ends, already twisted back
    std::string extension_form;
    TriState certified = TriState::Unknown;
    std::string detail;
    BeilinsonTable table;
};

// Verifies the extra vanishing hypothesis, builds the table for the
// normalized twist of V, reads off the diagonal multiplicities and returns
// the instantiated extension statement.
inline PrimitiveCertificate primitive_certificate(const VarietyDesc& v, const SheafExpr& ve,
                                                  CohomCache* cache = &global_cohom_cache())
{
    if (v.kind != VarietyKind::FlagF && v.kind != VarietyKind::Scroll)
        throw parameter_error("primitive certification covers flag6 and scrolls only");

    UlrichReport ur = ulrich_check(v, ve, cache);
    if (ur.is_ulrich != TriState::Yes)
        throw parameter_error("certification requires an Ulrich bundle; failed at " +
                              (ur.failed_condition.empty() ? std::string("h0")
                                                           : ur.failed_condition));

    PrimitiveCertificate cert;
    DivClass back_twist; // twist restoring V from the table input A

    if (v.kind == VarietyKind::FlagF) {
        // vanishing of the paired product with both rank-2 catalog bundles
        SheafExpr hyp = SheafExpr::tensor(
            SheafExpr::tensor(SheafExpr::twist(ve, DivClass{-1, -1}), {CatalogKind::G1, 0}),
            {CatalogKind::G2, 0});
        cert.hypothesis_status = band_is_zero(evaluate_cohom(v, hyp, cache).at(2));
        back_twist = DivClass{2, 2};
    } else {
        Int n = v.scroll_fiber_dim();
        cert.hypothesis_status = TriState::Yes;
        for (int i = 1; i <= n - 1; ++i) {
            auto iv = evaluate_cohom(v, SheafExpr::twist(ve, DivClass{-i, -i - 1}), cache);
            cert.hypothesis_status = tri_all({cert.hypothesis_status,
                                              band_is_zero(iv.at(i))});
        }
        back_twist = DivClass{1, 1};
    }

    cert.table = e1_table(v, SheafExpr::twist(ve, -1 * back_twist), cache);
    cert.table_diagonal = cert.table.off_diagonal_zero();

    auto a_band = cert.table.diagonal_entry(cert.table.sub_column);
    auto b_band = cert.table.diagonal_entry(cert.table.quot_column);
    cert.sub_class = cert.table.columns[cert.table.sub_column].output_c1 + back_twist;
    cert.quot_class = cert.table.columns[cert.table.quot_column].output_c1 + back_twist;

    if (cert.hypothesis_status != TriState::Yes || !cert.table_diagonal ||
        !a_band.exact() || !b_band.exact()) {
        cert.certified = cert.hypothesis_status == TriState::No ? TriState::No
                                                                : TriState::Unknown;
        cert.detail = cert.hypothesis_status != TriState::Yes
                          ? "vanishing hypothesis not verified"
                          : "table not exactly diagonal";
        return cert;
    }
    cert.sub_mult = a_band.lo;
    cert.quot_mult = b_band.lo;

    // rank and c1 bookkeeping against the designated extension ends
    RankC1 rc = rank_c1(v, ve);
    bool rank_ok = cert.sub_mult + cert.quot_mult == rc.rank;
    bool c1_ok = cert.sub_mult * cert.sub_class + cert.quot_mult * cert.quot_class == rc.c1;
    if (v.kind == VarietyKind::FlagF) {
        // companion cells in the rank-2 catalog columns must echo (a, b)
        auto echo_a = cert.table.diagonal_entry(2);
        auto echo_b = cert.table.diagonal_entry(1);
        rank_ok = rank_ok && echo_a.exact() && echo_a.lo == cert.sub_mult &&
                  echo_b.exact() && echo_b.lo == cert.quot_mult;
    }
    if (!rank_ok || !c1_ok) {
        cert.certified = TriState::No;
        cert.detail = "diagonal does not reconstruct rank and c1";
        return cert;
    }

    cert.certified = TriState::Yes;
    cert.extension_form = "0 -> " + beilinson_detail::line_label(cert.sub_class) + "^" +
                          std::to_string(cert.sub_mult) + " -> V -> " +
                          beilinson_detail::line_label(cert.quot_class) + "^" +
                          std::to_string(cert.quot_mult) + " -> 0";
    return cert;
}

// ------------------------------- rendering ---------------------------------

inline std::string render_table_markdown(const BeilinsonTable& tab)
{
    std::string out = "|";
    for (size_t j = tab.columns.size(); j-- > 0;)
        out += " " + tab.columns[j].output_label + " |";
    out += "\n|";
    for (size_t j = tab.columns.size(); j-- > 0;)
        out += "---|";
    out += "\n";
    for (int t = tab.dim(); t >= 0; --t) {
        out += "|";
        for (size_t j = tab.columns.size(); j-- > 0;) {
            auto band = tab.cells[j].at(t);
            std::string cell = band.exact() ? std::to_string(band.lo)
                                            : "[" + std::to_string(band.lo) + "," +
                                                  std::to_string(band.hi) + "]";
            out += " " + cell + " |";
        }
        out += "\n";
    }
    out += "|";
    for (size_t j = tab.columns.size(); j-- > 0;)
        out += " " + tab.columns[j].tensor_object.str() + " |";
    out += "\n";
    return out;
}

inline std::string render_table_csv(const BeilinsonTable& tab)
{
    std::string out = "degree";
    for (size_t j = tab.columns.size(); j-- > 0;)
        out += "," + tab.columns[j].output_label;
    out += "\n";
    for (int t = tab.dim(); t >= 0; --t) {
        out += std::to_string(t);
        for (size_t j = tab.columns.size(); j-- > 0;) {
            auto band = tab.cells[j].at(t);
            out += band.exact() ? "," + std::to_string(band.lo)
                                : ",[" + std::to_string(band.lo) + ";" +
                                      std::to_string(band.hi) + "]";
        }
        out += "\n";
    }
    out += "tensor";
    for (size_t j = tab.columns.size(); j-- > 0;)
        out += "," + tab.columns[j].tensor_object.str();
    out += "\n";
    return out;
}

inline nlohmann::json to_json(const BeilinsonTable& tab)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["variety"] = tab.variety.spec_string();
    nlohmann::json cells = nlohmann::json::array();
    for (size_t col = 0; col < tab.columns.size(); ++col)
        for (int t = 0; t <= tab.dim(); ++t) {
            auto band = tab.cells[col].at(t);
            cells.push_back({{"column", col},
                             {"q", t - tab.columns[col].shift},
                             {"degree", t},
                             {"lo", band.lo},
                             {"hi", band.hi}});
        }
    j["cells"] = cells;
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : tab.columns)
        cols.push_back({{"output", c.output_label},
                        {"tensor", c.tensor_object.str()},
                        {"shift", c.shift},
                        {"output_rank", c.output_rank},
                        {"output_c1", c.output_c1.c},
                        {"diagonal_degree", c.diagonal_degree}});
    j["columns"] = cols;
    if (auto diag = tab.diagonal_summary())
        j["diagonal"] = *diag;
    return j;
}

inline nlohmann::json to_json(const PrimitiveCertificate& cert)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["certified"] = tri_str(cert.certified);
    j["hypothesis_status"] = tri_str(cert.hypothesis_status);
    j["table_diagonal"] = cert.table_diagonal;
    j["a"] = cert.sub_mult;
    j["b"] = cert.quot_mult;
    j["sub"] = cert.sub_class.c;
    j["quot"] = cert.quot_class.c;
    j["extension_form"] = cert.extension_form;
    if (!cert.detail.empty())
        j["detail"] = cert.detail;
    j["table"] = to_json(cert.table);
    return j;
}

} // namespace ulrich
