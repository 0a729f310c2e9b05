#pragma once

#include <optional>
#include <sstream>

#include "ulrich/core.hpp"

namespace ulrich {

enum class VarietyKind { Product, Scroll, FlagF, Veronese2 };

// A polarized variety from the supported catalog:
//   Product   P^{n_1} x ... x P^{n_s} with O(1,...,1)
//   Scroll    S(a_0,...,a_n), the rational normal scroll, with O(H)
//   FlagF     the degree-6 flag threefold in P^7, with O(1,1)
//   Veronese2 (P^2, O(2))
struct VarietyDesc {
    VarietyKind kind;
    std::vector<Int> params; // factor dimensions / scroll twists; empty otherwise

    static VarietyDesc product(std::vector<Int> dims)
    {
        for (Int n : dims)
            if (n <= 0)
                throw parameter_error("product factor dimension must be positive, got " +
                                      std::to_string(n));
        if (dims.empty())
            throw parameter_error("product needs at least one factor");
        return {VarietyKind::Product, std::move(dims)};
    }
    static VarietyDesc scroll(std::vector<Int> twists)
    {
        if (twists.empty())
            throw parameter_error("scroll needs at least one twist");
        Int prev = 0;
        for (Int a : twists) {
            if (a < 1)
                throw parameter_error("scroll twist must be >= 1, got " + std::to_string(a));
            if (a < prev)
                throw parameter_error("scroll twists must be nondecreasing, got " +
                                      std::to_string(a) + " after " + std::to_string(prev));
            prev = a;
        }
        return {VarietyKind::Scroll, std::move(twists)};
    }
    static VarietyDesc flag6() { return {VarietyKind::FlagF, {}}; }
    static VarietyDesc veronese2() { return {VarietyKind::Veronese2, {}}; }

    int dim() const
    {
        switch (kind) {
        case VarietyKind::Product:
            return static_cast<int>(std::accumulate(params.begin(), params.end(), Int{0}));
        case VarietyKind::Scroll:
            return static_cast<int>(params.size()); // n+1 with n = #twists - 1
        case VarietyKind::FlagF:
            return 3;
        case VarietyKind::Veronese2:
            return 2;
        }
        throw error("bad kind");
    }

    // Picard rank, i.e. the length of a DivClass.
    int picard_rank() const
    {
        switch (kind) {
        case VarietyKind::Product:
            return static_cast<int>(params.size());
        case VarietyKind::Scroll:
        case VarietyKind::FlagF:
            return 2;
        case VarietyKind::Veronese2:
            return 1;
        }
        throw error("bad kind");
    }

    // Dimension of the ambient projective space of the polarized embedding.
    Int ambient_dim() const
    {
        switch (kind) {
        case VarietyKind::Product: {
            Int p = 1;
            for (Int n : params)
                p *= n + 1;
            return p - 1;
        }
        case VarietyKind::Scroll:
            return scroll_degree() + scroll_fiber_dim();
        case VarietyKind::FlagF:
            return 7;
        case VarietyKind::Veronese2:
            return 5;
        }
        throw error("bad kind");
    }

    Int degree() const
    {
        switch (kind) {
        case VarietyKind::Product: {
            // multinomial (sum n_i)! / prod n_i!
            Int total = std::accumulate(params.begin(), params.end(), Int{0});
            Int d = 1, used = 0;
            for (Int n : params) {
                d *= binomial(used + n, n);
                used += n;
            }
            (void)total;
            return d;
        }
        case VarietyKind::Scroll:
            return scroll_degree();
        case VarietyKind::FlagF:
            return 6;
        case VarietyKind::Veronese2:
            return 4;
        }
        throw error("bad kind");
    }

    DivClass canonical_class() const
    {
        switch (kind) {
        case VarietyKind::Product: {
            DivClass k;
            for (Int n : params)
                k.c.push_back(-n - 1);
            return k;
        }
        case VarietyKind::Scroll: {
            // -(n+1)H + (c-2)F in (x,y) coordinates: O(aH+bF) <-> (a+b, a)
            Int n = scroll_fiber_dim();
            Int c = scroll_degree();
            return DivClass{c - n - 3, -n - 1};
        }
        case VarietyKind::FlagF:
            return DivClass{-2, -2};
        case VarietyKind::Veronese2:
            return DivClass{-3}; // in O(1)-units
        }
        throw error("bad kind");
    }

    // Hyperplane class of the polarization in DivClass coordinates.
    DivClass hyperplane_class() const
    {
        switch (kind) {
        case VarietyKind::Product:
            return DivClass(std::vector<Int>(params.size(), 1));
        case VarietyKind::Scroll:
        case VarietyKind::FlagF:
            return DivClass{1, 1};
        case VarietyKind::Veronese2:
            return DivClass{2}; // polarization is O(2) on P^2
        }
        throw error("bad kind");
    }

    // Scroll helpers.
    Int scroll_degree() const
    {
        return std::accumulate(params.begin(), params.end(), Int{0});
    }
    int scroll_fiber_dim() const { return static_cast<int>(params.size()) - 1; }

    void check_class(const DivClass& d) const
    {
        if (static_cast<int>(d.size()) != picard_rank())
            throw parameter_error("divisor class " + d.str() + " has length " +
                                  std::to_string(d.size()) + ", expected " +
                                  std::to_string(picard_rank()));
    }

    std::string spec_string() const
    {
        std::ostringstream os;
        switch (kind) {
        case VarietyKind::Product:
            os << "product:";
            break;
        case VarietyKind::Scroll:
            os << "scroll:";
            break;
        case VarietyKind::FlagF:
            return "flag6";
        case VarietyKind::Veronese2:
            return "veronese2";
        }
        for (size_t i = 0; i < params.size(); ++i)
            os << (i ? "," : "") << params[i];
        return os.str();
    }

    bool operator==(const VarietyDesc& o) const
    {
        return kind == o.kind && params == o.params;
    }
};

// Grammar: product:<n1>,...,<ns> | scroll:<a0>,...,<an> | flag6 | veronese2
inline VarietyDesc parse_variety(const std::string& spec)
{
    if (spec == "flag6")
        return VarietyDesc::flag6();
    if (spec == "veronese2")
        return VarietyDesc::veronese2();

    auto parse_list = [&](const std::string& body) {
        std::vector<Int> out;
        if (body.empty())
            throw parameter_error("empty parameter list in variety spec '" + spec + "'");
        size_t pos = 0;
        while (pos <= body.size()) {
            size_t comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
            if (tok.empty() || tok.find_first_not_of("0123456789-") != std::string::npos)
                throw parameter_error("bad token '" + tok + "' in variety spec '" + spec + "'");
            try {
                out.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw parameter_error("bad token '" + tok + "' in variety spec '" + spec + "'");
            }
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        return out;
    };

    if (spec.rfind("product:", 0) == 0)
        return VarietyDesc::product(parse_list(spec.substr(8)));
    if (spec.rfind("scroll:", 0) == 0)
        return VarietyDesc::scroll(parse_list(spec.substr(7)));
    throw parameter_error("unrecognized variety spec '" + spec + "'");
}

struct InvariantsReport {
    Int degree;
    int dim;
    Int ambient_dim;
    DivClass canonical;
};

inline InvariantsReport invariants_report(const VarietyDesc& v)
{
    return {v.degree(), v.dim(), v.ambient_dim(), v.canonical_class()};
}

} // namespace ulrich
