#ifndef INTDIFF_JSON_IO_HPP
#define INTDIFF_JSON_IO_HPP

#include <json.hpp>

#include "intdiff/action.hpp"
#include "intdiff/b1.hpp"
#include "intdiff/centralizer.hpp"
#include "intdiff/lang.hpp"
#include "intdiff/units.hpp"

namespace intdiff {

using json = nlohmann::json;

// Rationals travel as canonical strings ("p/q" or "p") everywhere below.

inline json rational_json(const Rational& r) { return rat_to_string(r); }

template <class Tag>
json poly_coeffs_json(const Poly<Tag>& p) {
    json arr = json::array();
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(rat_to_string(p.coeff(i)));
    return arr;
}

inline json xpoly_json(const XPoly& p) {
    return json{{"coeffs", poly_coeffs_json(p)}, {"text", print_xpoly(p)}};
}

inline json operator_json(const Operator& a) {
    json graded = json::array();
    for (const auto& [k, b] : a.graded()) graded.push_back(json{{"deg", k}, {"poly", poly_coeffs_json(b)}});
    json fpart = json::array();
    for (const auto& [ij, c] : a.fpart().entries())
        fpart.push_back(json{{"i", ij.first}, {"j", ij.second}, {"c", rat_to_string(c)}});
    return json{{"graded", graded}, {"fpart", fpart}, {"text", print(a)}};
}

inline Operator operator_from_json(const json& j) {
    Operator a;
    for (const auto& term : j.at("graded")) {
        std::vector<Rational> c;
        for (const auto& s : term.at("poly")) c.push_back(rat_from_string(s.get<std::string>()));
        a = a + Operator::graded_term(term.at("deg").get<int>(), HPoly(std::move(c)));
    }
    for (const auto& term : j.at("fpart"))
        a = a + Operator::e(term.at("i").get<int>(), term.at("j").get<int>(), rat_from_string(term.at("c").get<std::string>()));
    return a;
}

inline json trunc_json(const TruncMatrix& t) {
    json rows = json::array();
    for (int i = 0; i < t.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < t.cols; ++j) row.push_back(rat_to_string(t.entries.at(i, j)));
        rows.push_back(row);
    }
    return json{{"rows", t.rows}, {"cols", t.cols}, {"entries", rows}};
}

inline json analysis_json(const AnalysisReport& r) {
    json ker = json::array(), cok = json::array();
    for (const auto& q : r.kernel_basis) ker.push_back(xpoly_json(q));
    for (const auto& q : r.cokernel_basis) cok.push_back(xpoly_json(q));
    return json{{"index", r.index},       {"kernel", ker},          {"cokernel", cok},
                {"injective", r.injective}, {"surjective", r.surjective}, {"bijective", r.bijective},
                {"window_used", r.window_used}};
}

inline json solution_json(const SolutionSet& s) {
    json j{{"solvable", s.particular.has_value()}};
    j["particular"] = s.particular ? xpoly_json(*s.particular) : json(nullptr);
    json hom = json::array();
    for (const auto& q : s.homogeneous_basis) hom.push_back(xpoly_json(q));
    j["homogeneous"] = hom;
    return j;
}

inline json witness_json(const OneSidedWitness& w) {
    return json{{"kind", w.kind == OneSidedWitness::Kind::Left ? "left" : "right"},
                {"n", w.n},
                {"unit_factor", operator_json(w.unit_factor)},
                {"inverse", operator_json(w.inverse)}};
}

inline std::string centralizer_text(const CentralizerDescription& d) {
    switch (d.kind) {
        case CentralizerDescription::Kind::PolyInD: return "K[D]";
        case CentralizerDescription::Kind::PolyInI: return "K[I]";
        case CentralizerDescription::Kind::PolyInX: return "K[x]";
        case CentralizerDescription::Kind::D1PlusPairs: {
            std::string s = "D1";
            for (const auto& [i, j] : d.pair_basis) {
                s += " + K*e[" + std::to_string(i) + "," + std::to_string(j) + "]";
                s += " + K*e[" + std::to_string(j) + "," + std::to_string(i) + "]";
            }
            return s;
        }
        case CentralizerDescription::Kind::Truncated: {
            std::string s = "span{";
            for (size_t i = 0; i < d.basis.size(); ++i) s += (i ? ", " : "") + print(d.basis[i]);
            return s + "}";
        }
    }
    return "";
}

inline json centralizer_json(const CentralizerDescription& d) {
    json j;
    switch (d.kind) {
        case CentralizerDescription::Kind::PolyInD: j["kind"] = "poly_in_D"; break;
        case CentralizerDescription::Kind::PolyInI: j["kind"] = "poly_in_I"; break;
        case CentralizerDescription::Kind::PolyInX: j["kind"] = "poly_in_x"; break;
        case CentralizerDescription::Kind::D1PlusPairs: j["kind"] = "D1_plus_pairs"; break;
        case CentralizerDescription::Kind::Truncated: j["kind"] = "truncated"; break;
    }
    json pairs = json::array();
    for (const auto& [i, jj] : d.pair_basis) pairs.push_back(json::array({i, jj}));
    j["pairs"] = pairs;
    json basis = json::array();
    for (const auto& b : d.basis) basis.push_back(operator_json(b));
    j["basis"] = basis;
    j["text"] = centralizer_text(d);
    return j;
}

// Coefficient map convention: entry at deg k holds the polynomial to the
// RIGHT of D^k.
inline json b1_json(const B1Element& u) {
    json coeffs = json::array();
    for (const auto& [k, p] : u.coeffs) coeffs.push_back(json{{"deg", k}, {"poly", poly_coeffs_json(p)}});
    return json{{"coeffs", coeffs}, {"text", print_b1(u)}};
}

}  // namespace intdiff

#endif
