// intdiff: batch calculator for polynomial integro-differential operators.
//
// Usage: intdiff [--json] [--window N] <verb> <args...>
// Exit codes: 0 success, 1 domain error, 2 parse/usage error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "intdiff/intdiff.hpp"
#include "intdiff/json_io.hpp"

namespace {

using namespace intdiff;

struct Options {
    bool json = false;
    std::optional<int> window;
    std::optional<int> count;
    std::string verb;
    std::vector<std::string> args;
};

int usage(std::ostream& os) {
    os << "usage: intdiff [--json] [--window N] [--count K] <verb> <args...>\n"
          "\n"
          "operator expressions use atoms D, I, H, x, e[i,j], rationals p/q and + - * ^ ( );\n"
          "polynomials in x use atoms x and rationals.\n"
          "\n"
          "verbs:\n"
          "  canon EXPR              canonical form\n"
          "  add EXPR EXPR           sum\n"
          "  mul EXPR EXPR           product\n"
          "  star EXPR               involution (D* = I, I* = D, H* = H)\n"
          "  apply EXPR POLY         act on a polynomial in x\n"
          "  truncate EXPR COLS      matrix window in the divided basis\n"
          "  index EXPR              Fredholm index on K[x]\n"
          "  analyze EXPR            index, kernel, cokernel, classification\n"
          "  classify EXPR           injective/surjective/bijective from structure\n"
          "  solve EXPR POLY         solve a*q = p over K[x]\n"
          "  invapply EXPR POLY      apply the inverse of a bijective operator\n"
          "  leftinv EXPR            left-invertibility witness\n"
          "  rightinv EXPR           right-invertibility witness\n"
          "  linvset EXPR [K]        K distinct left inverses (K positional or --count)\n"
          "  det EXPR                determinant on K+F\n"
          "  unitinv EXPR            inverse of a unit of K+F\n"
          "  kappa EXPR N            corner shift kappa^N on K+F\n"
          "  regularity EXPR         left/right regularity flags\n"
          "  commutes EXPR EXPR      do the two operators commute\n"
          "  centralizer EXPR        closed-form centralizer when known\n"
          "  commutant EXPR          basis of the commutant inside F (window via --window, default 6)\n"
          "  project EXPR            image in the quotient B1 = I1/F\n"
          "  b1mul EXPR EXPR         product of the projections in B1\n"
          "  isnormal EXPR           is the projection a normal element of B1\n"
          "  normalize EXPR          (alpha, beta, b') with beta*b/alpha normal\n"
          "  trace EXPR              trace on F\n"
          "  degf EXPR               F-degree\n";
    return 2;
}

std::string flag_text(bool b) { return b ? "true" : "false"; }

void print_analysis(const AnalysisReport& r) {
    std::cout << "index: " << r.index << "\n";
    std::cout << "kernel: {";
    for (size_t i = 0; i < r.kernel_basis.size(); ++i) std::cout << (i ? ", " : "") << print_xpoly(r.kernel_basis[i]);
    std::cout << "}\ncokernel: {";
    for (size_t i = 0; i < r.cokernel_basis.size(); ++i) std::cout << (i ? ", " : "") << print_xpoly(r.cokernel_basis[i]);
    std::cout << "}\n";
    std::cout << "injective: " << flag_text(r.injective) << "\nsurjective: " << flag_text(r.surjective)
              << "\nbijective: " << flag_text(r.bijective) << "\nwindow: " << r.window_used << "\n";
}

void print_witness(const std::optional<OneSidedWitness>& w) {
    if (!w) {
        std::cout << "absent\n";
        return;
    }
    std::cout << "n: " << w->n << "\nunit_factor: " << print(w->unit_factor) << "\ninverse: " << print(w->inverse) << "\n";
}

long parse_count(const std::string& s) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a natural number, got '" + s + "'", 1, 1);
    }
}

int run(const Options& opt) {
    const auto need = [&](size_t n) {
        if (opt.args.size() != n)
            throw ParseError("verb '" + opt.verb + "' expects " + std::to_string(n) + " argument(s)", 1, 1);
    };
    json out;

    if (opt.verb == "canon" || opt.verb == "star" || opt.verb == "project" || opt.verb == "unitinv") {
        need(1);
        Operator a = parse(opt.args[0]);
        if (opt.verb == "star") a = star(a);
        if (opt.verb == "unitinv") a = unit_inverse(a);
        if (opt.verb == "project") {
            B1Element u = project(a);
            if (opt.json) out = b1_json(u);
            else std::cout << print_b1(u) << "\n";
        } else {
            if (opt.json) out = operator_json(a);
            else std::cout << print(a) << "\n";
        }
    } else if (opt.verb == "add" || opt.verb == "mul") {
        need(2);
        Operator a = parse(opt.args[0]), b = parse(opt.args[1]);
        Operator r = opt.verb == "add" ? a + b : a * b;
        if (opt.json) out = operator_json(r);
        else std::cout << print(r) << "\n";
    } else if (opt.verb == "apply" || opt.verb == "invapply") {
        need(2);
        Operator a = parse(opt.args[0]);
        XPoly p = parse_xpoly(opt.args[1]);
        XPoly r = opt.verb == "apply" ? apply(a, p) : apply_inverse(a, p);
        if (opt.json) out = xpoly_json(r);
        else std::cout << print_xpoly(r) << "\n";
    } else if (opt.verb == "truncate") {
        need(2);
        TruncMatrix t = truncation(parse(opt.args[0]), static_cast<int>(parse_count(opt.args[1])));
        if (opt.json) {
            out = trunc_json(t);
        } else {
            for (int i = 0; i < t.rows; ++i) {
                std::cout << "[";
                for (int j = 0; j < t.cols; ++j) std::cout << (j ? " " : "") << rat_to_string(t.entries.at(i, j));
                std::cout << "]\n";
            }
        }
    } else if (opt.verb == "index" || opt.verb == "degf") {
        need(1);
        Operator a = parse(opt.args[0]);
        long v = opt.verb == "index" ? index(a) : deg_f(a);
        if (opt.json) out = json{{opt.verb == "index" ? "index" : "deg_F", v}};
        else std::cout << v << "\n";
    } else if (opt.verb == "trace" || opt.verb == "det") {
        need(1);
        Operator a = parse(opt.args[0]);
        Rational v = opt.verb == "trace" ? trace_f(a) : det_kf(a);
        if (opt.json) out = json{{opt.verb, rat_to_string(v)}};
        else std::cout << rat_to_string(v) << "\n";
    } else if (opt.verb == "analyze") {
        need(1);
        AnalysisReport r = analyze(parse(opt.args[0]), opt.window.value_or(0));
        if (opt.json) out = analysis_json(r);
        else print_analysis(r);
    } else if (opt.verb == "classify") {
        need(1);
        ClassificationFlags f = classify_structural(parse(opt.args[0]));
        if (opt.json)
            out = json{{"injective", f.injective}, {"surjective", f.surjective}, {"bijective", f.bijective}};
        else
            std::cout << "injective: " << flag_text(f.injective) << "\nsurjective: " << flag_text(f.surjective)
                      << "\nbijective: " << flag_text(f.bijective) << "\n";
    } else if (opt.verb == "solve") {
        need(2);
        SolutionSet s = solve(parse(opt.args[0]), parse_xpoly(opt.args[1]), opt.window.value_or(0));
        if (opt.json) {
            out = solution_json(s);
        } else {
            if (s.particular) std::cout << "particular: " << print_xpoly(*s.particular) << "\n";
            else std::cout << "particular: none\n";
            std::cout << "homogeneous: {";
            for (size_t i = 0; i < s.homogeneous_basis.size(); ++i)
                std::cout << (i ? ", " : "") << print_xpoly(s.homogeneous_basis[i]);
            std::cout << "}\n";
        }
    } else if (opt.verb == "leftinv" || opt.verb == "rightinv") {
        need(1);
        Operator a = parse(opt.args[0]);
        auto w = opt.verb == "leftinv" ? left_inverse(a) : right_inverse(a);
        if (opt.json) out = w ? json{{"present", true}, {"witness", witness_json(*w)}} : json{{"present", false}};
        else print_witness(w);
    } else if (opt.verb == "linvset") {
        int k;
        if (opt.count && opt.args.size() == 1) {
            k = *opt.count;
        } else {
            need(2);
            k = static_cast<int>(parse_count(opt.args[1]));
        }
        auto vs = left_inverse_set_sample(parse(opt.args[0]), k);
        if (opt.json) {
            out = json::array();
            for (const auto& v : vs) out.push_back(operator_json(v));
        } else {
            for (const auto& v : vs) std::cout << print(v) << "\n";
        }
    } else if (opt.verb == "kappa") {
        need(2);
        Operator r = kappa_shift(parse(opt.args[0]), static_cast<int>(parse_count(opt.args[1])));
        if (opt.json) out = operator_json(r);
        else std::cout << print(r) << "\n";
    } else if (opt.verb == "regularity") {
        need(1);
        RegularityFlags f = regularity(parse(opt.args[0]));
        if (opt.json)
            out = json{{"left_regular", f.left_regular}, {"right_regular", f.right_regular}, {"regular", f.regular}};
        else
            std::cout << "left_regular: " << flag_text(f.left_regular)
                      << "\nright_regular: " << flag_text(f.right_regular) << "\nregular: " << flag_text(f.regular)
                      << "\n";
    } else if (opt.verb == "commutes") {
        need(2);
        bool c = commutes(parse(opt.args[0]), parse(opt.args[1]));
        if (opt.json) out = json{{"commutes", c}};
        else std::cout << flag_text(c) << "\n";
    } else if (opt.verb == "centralizer") {
        need(1);
        auto d = centralizer_closed_form(parse(opt.args[0]));
        if (opt.json) out = d ? json{{"present", true}, {"description", centralizer_json(*d)}} : json{{"present", false}};
        else std::cout << (d ? centralizer_text(*d) : "no closed form (see the commutant verb)") << "\n";
    } else if (opt.verb == "commutant") {
        need(1);
        Operator a = parse(opt.args[0]);
        int window = opt.window.value_or(6);
        auto basis = commutant_in_f(a, window);
        // informational only: off K[H]+F the commutant inside F is finite
        // dimensional, so two consecutive equal dimensions suggest the
        // window already captures it
        std::optional<bool> stabilized;
        if (!a.in_kh_plus_f() && window >= 1)
            stabilized = commutant_in_f(a, window - 1).size() == basis.size();
        if (opt.json) {
            out = json{{"window", window}, {"basis", json::array()}};
            for (const auto& f : basis) out["basis"].push_back(operator_json(f));
            if (stabilized) out["dimension_stabilized"] = *stabilized;
        } else {
            std::cout << "within window " << window << ", dimension " << basis.size() << ":\n";
            for (const auto& f : basis) std::cout << print(f) << "\n";
            if (stabilized)
                std::cout << "note: dimension " << (*stabilized ? "unchanged" : "changed") << " from window "
                          << window - 1 << " (heuristic, not a completeness certificate)\n";
        }
    } else if (opt.verb == "b1mul") {
        need(2);
        B1Element r = b1_mul(project(parse(opt.args[0])), project(parse(opt.args[1])));
        if (opt.json) out = b1_json(r);
        else std::cout << print_b1(r) << "\n";
    } else if (opt.verb == "isnormal") {
        need(1);
        bool v = is_normal(project(parse(opt.args[0])));
        if (opt.json) out = json{{"normal", v}};
        else std::cout << flag_text(v) << "\n";
    } else if (opt.verb == "normalize") {
        need(1);
        Normalization n = normalize(project(parse(opt.args[0])));
        if (opt.json)
            out = json{{"alpha", print_hpoly(n.alpha)}, {"beta", print_hpoly(n.beta)}, {"normalized", b1_json(n.normalized)}};
        else
            std::cout << "alpha: " << print_hpoly(n.alpha) << "\nbeta: " << print_hpoly(n.beta)
                      << "\nnormalized: " << print_b1(n.normalized) << "\n";
    } else {
        std::cerr << "unknown verb '" << opt.verb << "'\n";
        return usage(std::cerr);
    }

    if (opt.json && !out.is_null()) std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    std::vector<std::string> rest;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--json") {
            opt.json = true;
        } else if (arg == "--window" || arg == "--count") {
            if (i + 1 >= argc) {
                std::cerr << arg << " needs a value\n";
                return 2;
            }
            try {
                int v = std::stoi(argv[++i]);
                (arg == "--window" ? opt.window : opt.count) = v;
            } catch (const std::exception&) {
                std::cerr << arg << " needs an integer\n";
                return 2;
            }
        } else if (arg == "--help" || arg == "-h") {
            usage(std::cout);
            return 0;
        } else {
            rest.push_back(arg);
        }
    }
    if (rest.empty()) return usage(std::cerr);
    opt.verb = rest[0];
    opt.args.assign(rest.begin() + 1, rest.end());
    try {
        return run(opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: computation exceeds available memory\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
