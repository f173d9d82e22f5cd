#ifndef INTDIFF_LANG_HPP
#define INTDIFF_LANG_HPP

#include <sstream>
#include <string>

#include "intdiff/b1.hpp"
#include "intdiff/operator.hpp"

namespace intdiff {

// Reported with 1-based line/column; the CLI maps it to exit code 2.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)), line(line_), column(col_) {}
};

namespace lang_detail {

struct Token {
    enum class Kind { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, LBracket, RBracket, Comma, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n')) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        auto single = [&](Token::Kind k) {
            tok_.kind = k;
            tok_.text = std::string(1, c);
            ++pos_;
            ++col_;
        };
        switch (c) {
            case '+': single(Token::Kind::Plus); return;
            case '-': single(Token::Kind::Minus); return;
            case '*': single(Token::Kind::Star); return;
            case '^': single(Token::Kind::Caret); return;
            case '/': single(Token::Kind::Slash); return;
            case '(': single(Token::Kind::LParen); return;
            case ')': single(Token::Kind::RParen); return;
            case '[': single(Token::Kind::LBracket); return;
            case ']': single(Token::Kind::RBracket); return;
            case ',': single(Token::Kind::Comma); return;
            default: break;
        }
        if (c >= '0' && c <= '9') {
            tok_.kind = Token::Kind::Int;
            tok_.text.clear();
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                tok_.text += src_[pos_++];
                ++col_;
            }
            return;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            tok_.kind = Token::Kind::Ident;
            tok_.text = std::string(1, c);
            ++pos_;
            ++col_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    std::string src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_{Token::Kind::End, "", 1, 1};
};

// Recursive descent over
//   expr   := term (("+"|"-") term)*
//   term   := factor ("*" factor)*
//   factor := ["-"] base ["^" nat]
//   base   := "D" | "I" | "H" | "x" | "e" "[" nat "," nat "]" | rational | "(" expr ")"
// evaluated directly into canonical Operator values ("x" canonicalizes
// to (H-1)*I on sight). The XPoly variant shares the grammar with atoms
// restricted to x and rationals, plus an optional "/ nat" denominator
// after a factor so printed polynomials like x^2/2 read back.
template <bool XOnly>
class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    Operator parse_operator() {
        Operator a = expr();
        expect_end();
        return a;
    }

    XPoly parse_xpoly() {
        static_assert(XOnly);
        XPoly p = xexpr();
        expect_end();
        return p;
    }

  private:
    using Token = lang_detail::Token;

    void expect_end() {
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input after expression", lex_.peek().line, lex_.peek().col);
    }
    Token expect(Token::Kind k, const char* what) {
        if (lex_.peek().kind != k) throw ParseError(std::string("expected ") + what, lex_.peek().line, lex_.peek().col);
        return lex_.next();
    }
    long expect_nat(const char* what) {
        Token t = expect(Token::Kind::Int, what);
        try {
            return std::stol(t.text);
        } catch (const std::exception&) {
            throw ParseError("number out of range", t.line, t.col);
        }
    }

    Operator expr() {
        Operator acc = term();
        while (true) {
            if (lex_.peek().kind == Token::Kind::Plus) {
                lex_.next();
                acc = acc + term();
            } else if (lex_.peek().kind == Token::Kind::Minus) {
                lex_.next();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }
    Operator term() {
        Operator acc = factor();
        while (lex_.peek().kind == Token::Kind::Star) {
            lex_.next();
            acc = acc * factor();
        }
        return acc;
    }
    Operator factor() {
        bool neg = false;
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.next();
            neg = true;
        }
        Operator b = base();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.next();
            if (lex_.peek().kind == Token::Kind::Minus)
                throw ParseError("exponent must be a natural number", lex_.peek().line, lex_.peek().col);
            long e = expect_nat("natural exponent");
            b = b.pow(static_cast<int>(e));
        }
        return neg ? -b : b;
    }
    Operator base() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Token::Kind::Ident: {
                lex_.next();
                if (t.text == "D") {
                    if constexpr (XOnly) throw ParseError("operator atom in polynomial context", t.line, t.col);
                    return Operator::d();
                }
                if (t.text == "I") {
                    if constexpr (XOnly) throw ParseError("operator atom in polynomial context", t.line, t.col);
                    return Operator::integral();
                }
                if (t.text == "H") {
                    if constexpr (XOnly) throw ParseError("operator atom in polynomial context", t.line, t.col);
                    return Operator::h();
                }
                if (t.text == "x") return Operator::x();
                if (t.text == "e") {
                    if constexpr (XOnly) throw ParseError("operator atom in polynomial context", t.line, t.col);
                    expect(Token::Kind::LBracket, "'['");
                    if (lex_.peek().kind == Token::Kind::Minus) throw ParseError("matrix unit index must be a natural number", lex_.peek().line, lex_.peek().col);
                    long i = expect_nat("row index");
                    expect(Token::Kind::Comma, "','");
                    if (lex_.peek().kind == Token::Kind::Minus) throw ParseError("matrix unit index must be a natural number", lex_.peek().line, lex_.peek().col);
                    long j = expect_nat("column index");
                    expect(Token::Kind::RBracket, "']'");
                    return Operator::e(static_cast<int>(i), static_cast<int>(j));
                }
                throw ParseError("unknown symbol '" + t.text + "'", t.line, t.col);
            }
            case Token::Kind::Int: {
                lex_.next();
                Rational v = rat_from_string(t.text);
                if (lex_.peek().kind == Token::Kind::Slash) {
                    lex_.next();
                    Token dt = lex_.peek();
                    long den = expect_nat("denominator");
                    if (den == 0) throw ParseError("zero denominator", dt.line, dt.col);
                    v /= Rational(den);
                }
                return Operator::scalar(v);
            }
            case Token::Kind::LParen: {
                lex_.next();
                Operator inner = expr();
                expect(Token::Kind::RParen, "')'");
                return inner;
            }
            default: throw ParseError("expected an atom", t.line, t.col);
        }
    }

    // polynomial-in-x layer (same shape, Operator replaced by XPoly)
    XPoly xexpr() {
        XPoly acc = xterm();
        while (true) {
            if (lex_.peek().kind == Token::Kind::Plus) {
                lex_.next();
                acc = acc + xterm();
            } else if (lex_.peek().kind == Token::Kind::Minus) {
                lex_.next();
                acc = acc - xterm();
            } else {
                return acc;
            }
        }
    }
    XPoly xterm() {
        XPoly acc = xfactor();
        while (lex_.peek().kind == Token::Kind::Star) {
            lex_.next();
            acc = acc * xfactor();
        }
        return acc;
    }
    XPoly xfactor() {
        bool neg = false;
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.next();
            neg = true;
        }
        XPoly b = xbase();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.next();
            if (lex_.peek().kind == Token::Kind::Minus)
                throw ParseError("exponent must be a natural number", lex_.peek().line, lex_.peek().col);
            long e = expect_nat("natural exponent");
            XPoly r(Rational(1));
            for (long i = 0; i < e; ++i) r = r * b;
            b = r;
        }
        if (lex_.peek().kind == Token::Kind::Slash) {
            Token st = lex_.next();
            long den = expect_nat("denominator");
            if (den == 0) throw ParseError("zero denominator", st.line, st.col);
            b = (Rational(1) / Rational(den)) * b;
        }
        return neg ? -b : b;
    }
    XPoly xbase() {
        Token t = lex_.peek();
        if (t.kind == Token::Kind::Ident && t.text == "x") {
            lex_.next();
            return xpoly_var();
        }
        if (t.kind == Token::Kind::Int) {
            lex_.next();
            return XPoly(rat_from_string(t.text));
        }
        if (t.kind == Token::Kind::LParen) {
            lex_.next();
            XPoly inner = xexpr();
            expect(Token::Kind::RParen, "')'");
            return inner;
        }
        throw ParseError("expected a polynomial atom", t.line, t.col);
    }

    Lexer lex_;
};

}  // namespace lang_detail

inline Operator parse(const std::string& text) { return lang_detail::Parser<false>(text).parse_operator(); }
inline XPoly parse_xpoly(const std::string& text) { return lang_detail::Parser<true>(text).parse_xpoly(); }

// ----- printing --------------------------------------------------------------

namespace lang_detail {

// "H^2 - 3*H + 9/4", highest degree first.
inline std::string hpoly_to_string(const HPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        Rational c = p.coeff(k);
        if (c == 0) continue;
        bool negative = c < 0;
        Rational a = abs(c);
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (k == 0) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << "H";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

// One graded term in grammar syntax: coefficient (parenthesized when it
// is a genuine polynomial sum) times D^|k| or I^k. The sign of a
// single-monomial coefficient is pulled out for the caller's joiner.
inline std::pair<bool, std::string> graded_term(int k, const HPoly& b) {
    std::string power;
    if (k < 0) power = (k == -1) ? "D" : "D^" + std::to_string(-k);
    if (k > 0) power = (k == 1) ? "I" : "I^" + std::to_string(k);

    int nonzero = 0;
    for (int i = 0; i <= b.degree(); ++i)
        if (b.coeff(i) != 0) ++nonzero;
    if (nonzero > 1) {
        std::string body = "(" + hpoly_to_string(b) + ")";
        return {false, power.empty() ? body : body + "*" + power};
    }
    int deg = b.degree();
    Rational c = b.leading();
    bool negative = c < 0;
    Rational a = abs(c);
    std::string body;
    if (deg >= 1) {
        std::string mono = deg == 1 ? "H" : "H^" + std::to_string(deg);
        body = (a == 1) ? mono : rat_to_string(a) + "*" + mono;
    } else {
        body = rat_to_string(a);
    }
    if (!power.empty()) body = (deg >= 1 || a != 1) ? body + "*" + power : power;
    return {negative, body};
}

}  // namespace lang_detail

// Canonical rendering; parse(print(a)) == a. Graded terms come first
// (highest D-power to highest I-power), then the matrix units in (i, j)
// order.
inline std::string print(const Operator& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](bool negative, const std::string& body) {
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        os << body;
    };
    for (const auto& [k, b] : a.graded()) {
        auto [neg, body] = lang_detail::graded_term(k, b);
        emit(neg, body);
    }
    for (const auto& [ij, c] : a.fpart().entries()) {
        bool negative = c < 0;
        Rational v = abs(c);
        std::string body = "e[" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "]";
        if (v != 1) body = rat_to_string(v) + "*" + body;
        emit(negative, body);
    }
    return os.str();
}

// "x^3 - 6*x", "x^2/2 - 1/3": rationals split around the monomial so the
// output stays inside the polynomial grammar.
inline std::string print_xpoly(const XPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        Rational c = p.coeff(k);
        if (c == 0) continue;
        bool negative = c < 0;
        Rational a = abs(c);
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (k == 0) {
            os << rat_to_string(a);
            continue;
        }
        std::string mono = k == 1 ? "x" : "x^" + std::to_string(k);
        Integer num = a.get_num(), den = a.get_den();
        if (num != 1) os << num.get_str() << "*";
        os << mono;
        if (den != 1) os << "/" << den.get_str();
    }
    return os.str();
}

inline std::string print_hpoly(const HPoly& p) { return lang_detail::hpoly_to_string(p); }

// Display form of a B_1 element as sums of P(H)*D^k, k in Z (negative
// exponents allowed here, unlike the operator grammar). The stored right
// coefficients are shifted back to the left: D^k b = tau^k(b) D^k.
inline std::string print_b1(const B1Element& u) {
    if (u.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = u.coeffs.rbegin(); it != u.coeffs.rend(); ++it) {
        HPoly left = poly_shift(it->second, it->first);
        std::string power;
        if (it->first != 0) power = (it->first == 1) ? "D" : "D^" + std::to_string(it->first);
        int nonzero = 0;
        for (int i = 0; i <= left.degree(); ++i)
            if (left.coeff(i) != 0) ++nonzero;
        bool negative = false;
        std::string body;
        if (nonzero > 1) {
            body = "(" + lang_detail::hpoly_to_string(left) + ")";
            if (!power.empty()) body += "*" + power;
        } else {
            Rational c = left.leading();
            negative = c < 0;
            Rational a = abs(c);
            int deg = left.degree();
            if (deg >= 1) {
                body = deg == 1 ? "H" : "H^" + std::to_string(deg);
                if (a != 1) body = rat_to_string(a) + "*" + body;
                if (!power.empty()) body += "*" + power;
            } else if (power.empty()) {
                body = rat_to_string(a);
            } else {
                body = (a == 1) ? power : rat_to_string(a) + "*" + power;
            }
        }
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        os << body;
    }
    return os.str();
}

}  // namespace intdiff

#endif
