#pragma once

#include <iostream>

#include <CLI11.hpp>

#include "ulrich/beilinson.hpp"
#include "ulrich/search.hpp"
#include "ulrich/toric.hpp"

namespace ulrich {

// Command-line front end. Mathematical "no" verdicts exit 0; usage and
// grammar problems exit 2; an oracle mismatch exits 3.

namespace cli_detail {

inline DivClass parse_tuple(const std::string& text)
{
    std::string body = text;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')')
            throw parameter_error("unbalanced parentheses in tuple '" + text + "'");
        body = body.substr(1, body.size() - 2);
    }
    DivClass d;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t comma = body.find(',', pos);
        std::string tok =
            body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            d.c.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw parameter_error("bad integer '" + tok + "' in tuple '" + text + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (d.c.empty())
        throw parameter_error("empty tuple '" + text + "'");
    return d;
}

// box grammar: lo:hi,lo:hi,... one interval per Picard coordinate
inline Box parse_box(const std::string& text)
{
    Box box;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t colon = tok.find(':');
        if (colon == std::string::npos)
            throw parameter_error("box interval '" + tok + "' is not lo:hi");
        try {
            box.bounds.emplace_back(std::stoll(tok.substr(0, colon)),
                                    std::stoll(tok.substr(colon + 1)));
        } catch (const std::exception&) {
            throw parameter_error("bad box interval '" + tok + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return box;
}

inline nlohmann::json interval_json(const IntervalCohomVector& iv)
{
    nlohmann::json lo = nlohmann::json::array(), hi = nlohmann::json::array();
    for (const auto& b : iv.v) {
        lo.push_back(b.lo);
        hi.push_back(b.hi);
    }
    nlohmann::json j;
    j["lo"] = lo;
    j["hi"] = hi;
    j["exact"] = iv.is_exact();
    if (iv.is_exact())
        j["h"] = lo;
    return j;
}

struct Envelope {
    std::string command;
    std::string variety;
    nlohmann::json query = nlohmann::json::object();
    nlohmann::json result;
    bool exact = true;
    bool cache_hit = false;

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["schema_version"] = kSchemaVersion;
        j["engine_version"] = kEngineVersion;
        j["command"] = command;
        j["variety"] = variety;
        j["query"] = query;
        j["exact"] = exact;
        j["cache_hit"] = cache_hit;
        j["result"] = result;
        return j;
    }
};

} // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    using cli_detail::Envelope;
    CLI::App app{"exact sheaf cohomology and Ulrich-bundle certification"};
    app.require_subcommand(1);

    std::string variety_spec, expr_text, class_text, sub_text, quot_text, box_text;
    std::string format = "json";
    bool use_oracle = false, no_cache = false;

    auto add_common = [&](CLI::App* cmd, bool needs_variety = true) {
        if (needs_variety)
            cmd->add_option("--variety", variety_spec, "variety spec")->required();
        cmd->add_option("--format", format, "json|md|csv")
            ->check(CLI::IsMember({"json", "md", "csv"}));
        cmd->add_flag("--no-cache", no_cache, "disable the cohomology cache");
    };

    auto* c_cohom = app.add_subcommand("cohom", "cohomology of a class or expression");
    add_common(c_cohom);
    c_cohom->add_option("--class", class_text, "divisor class tuple");
    c_cohom->add_option("--expr", expr_text, "sheaf expression");
    c_cohom->add_flag("--oracle", use_oracle, "cross-check against the toric oracle");

    auto* c_ulrich = app.add_subcommand("ulrich", "Ulrich status report");
    add_common(c_ulrich);
    c_ulrich->add_option("--class", class_text, "divisor class tuple");
    c_ulrich->add_option("--expr", expr_text, "sheaf expression");

    auto* c_acm = app.add_subcommand("acm", "ACM status report");
    add_common(c_acm);
    c_acm->add_option("--class", class_text, "divisor class tuple");
    c_acm->add_option("--expr", expr_text, "sheaf expression");

    auto* c_ext = app.add_subcommand("ext", "Ext^1 dimension between line bundles");
    add_common(c_ext);
    c_ext->add_option("--quot", quot_text, "quotient class")->required();
    c_ext->add_option("--sub", sub_text, "sub class")->required();

    auto* c_search = app.add_subcommand("search", "census of Ulrich line bundles");
    add_common(c_search);
    c_search->add_option("--box", box_text, "per-coordinate intervals lo:hi,...")
        ->required();

    auto* c_beil = app.add_subcommand("beilinson", "E1 table over the catalog collection");
    add_common(c_beil);
    c_beil->add_option("--expr", expr_text, "input expression")->required();

    auto* c_cert = app.add_subcommand("certify", "primitive-Ulrich certification");
    add_common(c_cert);
    c_cert->add_option("--expr", expr_text, "candidate bundle expression")->required();

    auto* c_oracle = app.add_subcommand("oracle-check",
                                        "closed forms against the toric oracle");
    add_common(c_oracle);
    c_oracle->add_option("--class", class_text, "single class (default: a small sweep)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n"
            << "usage: see --help (subcommands: cohom ulrich acm ext search beilinson "
               "certify oracle-check)\n";
        return 2;
    }

    CohomCache& cache = global_cohom_cache();
    cache.set_enabled(!no_cache);
    size_t hits_before = cache.enabled() ? cache.hits() : 0;

    try {
        VarietyDesc v = parse_variety(variety_spec);
        Envelope env;
        env.variety = variety_spec;

        auto parse_input_expr = [&]() {
            if (!expr_text.empty()) {
                env.query["expr"] = expr_text;
                return parse_expr(expr_text);
            }
            if (class_text.empty())
                throw parameter_error("provide --class or --expr");
            env.query["class"] = class_text;
            return SheafExpr::line_bundle(cli_detail::parse_tuple(class_text));
        };

        if (app.got_subcommand(c_cohom)) {
            env.command = "cohom";
            SheafExpr e = parse_input_expr();
            IntervalCohomVector iv = evaluate_cohom(v, e, &cache);
            env.exact = iv.is_exact();
            env.result = cli_detail::interval_json(iv);
            if (use_oracle) {
                if (!class_text.empty() &&
                    (v.kind == VarietyKind::Product || v.kind == VarietyKind::Scroll)) {
                    auto fan = build_fan(v);
                    CohomVector oracle =
                        toric_cohom(fan, v, cli_detail::parse_tuple(class_text));
                    env.result["oracle_h"] = oracle.h;
                    if (!iv.is_exact() || !(iv.to_exact() == oracle)) {
                        err << "oracle mismatch: closed form " << iv.str() << " vs toric "
                            << oracle.str() << "\n";
                        return 3;
                    }
                } else {
                    err << "--oracle needs --class on a product or scroll\n";
                    return 2;
                }
            }
            if (format == "md") {
                out << "| degree | h |\n|---|---|\n";
                for (size_t i = 0; i < iv.size(); ++i)
                    out << "| " << i << " | "
                        << (iv.v[i].exact() ? std::to_string(iv.v[i].lo)
                                            : "[" + std::to_string(iv.v[i].lo) + "," +
                                                  std::to_string(iv.v[i].hi) + "]")
                        << " |\n";
                return 0;
            }
            if (format == "csv") {
                out << "degree,lo,hi\n";
                for (size_t i = 0; i < iv.size(); ++i)
                    out << i << "," << iv.v[i].lo << "," << iv.v[i].hi << "\n";
                return 0;
            }
        } else if (app.got_subcommand(c_ulrich)) {
            env.command = "ulrich";
            UlrichReport rep = ulrich_check(v, parse_input_expr(), &cache);
            env.exact = rep.is_ulrich != TriState::Unknown;
            env.result = to_json(rep);
        } else if (app.got_subcommand(c_acm)) {
            env.command = "acm";
            ACMReport rep = acm_check(v, parse_input_expr(), &cache);
            env.exact = rep.is_acm != TriState::Unknown;
            env.result = to_json(rep);
        } else if (app.got_subcommand(c_ext)) {
            env.command = "ext";
            DivClass quot = cli_detail::parse_tuple(quot_text);
            DivClass sub = cli_detail::parse_tuple(sub_text);
            env.query["quot"] = quot_text;
            env.query["sub"] = sub_text;
            env.result["ext1"] = ext1_dim(v, quot, sub, &cache);
            env.result["hom"] = hom_dim(v, quot, sub, &cache);
        } else if (app.got_subcommand(c_search)) {
            env.command = "search";
            Box box = cli_detail::parse_box(box_text);
            env.query["box"] = box_text;
            auto census = search_ulrich_line_bundles(v, box, &cache);
            if (format == "csv") {
                out << "class,h0,is_ulrich\n";
                for (const auto& d : census)
                    out << "\"" << d.str() << "\"," << v.degree() << ",yes\n";
                return 0;
            }
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& d : census)
                arr.push_back(d.c);
            env.result["census"] = arr;
            env.result["count"] = census.size();
        } else if (app.got_subcommand(c_beil)) {
            env.command = "beilinson";
            BeilinsonTable tab = e1_table(v, parse_expr(expr_text), &cache);
            env.query["expr"] = expr_text;
            if (format == "md") {
                out << render_table_markdown(tab);
                return 0;
            }
            if (format == "csv") {
                out << render_table_csv(tab);
                return 0;
            }
            for (const auto& cell : tab.cells)
                env.exact = env.exact && cell.is_exact();
            env.result = to_json(tab);
        } else if (app.got_subcommand(c_cert)) {
            env.command = "certify";
            PrimitiveCertificate cert = primitive_certificate(v, parse_expr(expr_text), &cache);
            env.query["expr"] = expr_text;
            env.exact = cert.certified != TriState::Unknown;
            env.result = to_json(cert);
        } else if (app.got_subcommand(c_oracle)) {
            env.command = "oracle-check";
            if (v.kind != VarietyKind::Product && v.kind != VarietyKind::Scroll) {
                err << "oracle-check covers products and scrolls\n";
                return 2;
            }
            auto fan = build_fan(v);
            Int checked = 0;
            auto compare = [&](const DivClass& d) {
                CohomVector closed = line_cohomology(v, d, &cache);
                CohomVector oracle = toric_cohom(fan, v, d);
                ++checked;
                if (!(closed == oracle))
                    throw error("oracle mismatch at " + d.str() + ": closed " +
                                closed.str() + " vs toric " + oracle.str());
            };
            try {
                if (!class_text.empty()) {
                    env.query["class"] = class_text;
                    compare(cli_detail::parse_tuple(class_text));
                } else {
                    DivClass d(std::vector<Int>(static_cast<size_t>(v.picard_rank()), -3));
                    while (true) {
                        compare(d);
                        size_t k = d.size();
                        while (k > 0 && ++d[k - 1] > 3) {
                            d[k - 1] = -3;
                            --k;
                        }
                        if (k == 0)
                            break;
                    }
                }
            } catch (const error& e) {
                err << e.what() << "\n";
                return 3;
            }
            env.result["checked"] = checked;
            env.result["mismatches"] = 0;
        }

        env.cache_hit = cache.enabled() && cache.hits() > hits_before;
        out << env.to_json().dump(1) << "\n";
        return 0;
    } catch (const parameter_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace ulrich
