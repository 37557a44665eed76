#include "warpqm/parser.hpp"

#include "warpqm/errors.hpp"

#include <cctype>
#include <sstream>

namespace warpqm {

const std::set<std::string>& builtin_constants() {
    static const std::set<std::string> names{"e", "m", "G", "M", "I", "r_hs", "phi_M", "Omega", "B", "omega", "hbar", "pi"};
    return names;
}

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({kind, std::string(1, c), i});
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const ParseOptions& options) : tokens_(tokenize(text)), options_(options) {}

    OperatorExpr run() {
        OperatorExpr e = expr();
        if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) {
            throw ParseError(std::string("expected ") + what + (peek().kind == Tok::End ? " before end of input" : ""),
                             peek().pos);
        }
        return next();
    }

    OperatorExpr expr() {
        OperatorExpr e = term();
        for (;;) {
            if (accept(Tok::Plus)) {
                e += term();
            } else if (accept(Tok::Minus)) {
                e -= term();
            } else {
                return e;
            }
        }
    }

    OperatorExpr term() {
        OperatorExpr e = unary();
        for (;;) {
            if (accept(Tok::Star)) {
                e = e * unary();
            } else if (peek().kind == Tok::Slash) {
                const std::size_t at = next().pos;
                e = e * invert(unary(), at);
            } else {
                return e;
            }
        }
    }

    OperatorExpr unary() {
        if (accept(Tok::Minus)) return -unary();
        return power();
    }

    OperatorExpr power() {
        const std::size_t at = peek().pos;
        OperatorExpr base = primary();
        if (!accept(Tok::Caret)) return base;
        const Exponent k = exponent();
        return raise(base, k, at);
    }

    Exponent exponent() {
        const bool paren = accept(Tok::LParen);
        const bool negative = accept(Tok::Minus);
        const Token& num = expect(Tok::Int, "integer exponent");
        std::int64_t n = std::stoll(num.text);
        std::int64_t d = 1;
        // Without parentheses only a negative exponent takes a denominator, so e^2/r stays e^2 / r.
        const bool fraction = paren ? peek().kind == Tok::Slash
                                    : negative && peek().kind == Tok::Slash && pos_ + 1 < tokens_.size() &&
                                          tokens_[pos_ + 1].kind == Tok::Int;
        if (fraction) {
            ++pos_;
            d = std::stoll(expect(Tok::Int, "exponent denominator").text);
        }
        if (d == 0) throw ParseError("zero exponent denominator", num.pos);
        if (paren) expect(Tok::RParen, "')'");
        return Exponent(negative ? -n : n, d);
    }

    OperatorExpr primary() {
        const Token& t = next();
        switch (t.kind) {
            case Tok::Int: return OperatorExpr(CoordFunction(Complex(Rational(t.text))));
            case Tok::LParen: {
                OperatorExpr e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: return symbol(t);
            case Tok::End: throw ParseError("unexpected end of input", t.pos);
            default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
    }

    OperatorExpr symbol(const Token& t) {
        const std::string& s = t.text;
        if (s.size() == 2 && (s[0] == 'X' || s[0] == 'P') && s[1] >= '1' && s[1] <= '3') {
            const Axis a = s[1] - '1';
            return s[0] == 'X' ? OperatorExpr::position(a) : OperatorExpr::momentum(a);
        }
        if (s == "r") return OperatorExpr(CoordFunction::r_power(Exponent(1)));
        if (s == "rho") return OperatorExpr(CoordFunction::rho_power(Exponent(1)));
        if (s == "i") return OperatorExpr(Complex::imaginary_unit());
        if (builtin_constants().count(s) || options_.constants.count(s)) return OperatorExpr(CoordFunction::symbol(s));
        throw UnknownSymbolError(s, t.pos);
    }

    static const CoordFunction& single_function(const OperatorExpr& e, std::size_t at, const char* what) {
        if (e.momentum_degree() != 0) throw ParseError(std::string(what) + " must not contain momentum operators", at);
        const CoordFunction& f = e.terms().begin()->second;
        if (f.size() != 1) throw ParseError(std::string(what) + " must be a single term", at);
        return f;
    }

    static OperatorExpr invert(const OperatorExpr& d, std::size_t at) {
        if (d.is_zero()) throw ParseError("division by zero", at);
        const CoordFunction& f = single_function(d, at, "divisor");
        try {
            return OperatorExpr(f.inverse_monomial());
        } catch (const InvalidArgument&) {
            throw ParseError("divisor must not contain X1, X2 or X3", at);
        }
    }

    static OperatorExpr raise(const OperatorExpr& base, const Exponent& k, std::size_t at) {
        if (k.is_integer() && k.num() >= 0) return base.pow(static_cast<unsigned>(k.num()));
        if (base.is_zero()) throw ParseError("zero raised to a negative or fractional power", at);
        const CoordFunction& f = single_function(base, at, "base of a negative or fractional power");
        const auto& [m, c] = *f.terms().begin();
        if (m.x != std::array<int, kDim>{0, 0, 0}) {
            throw ParseError("X1, X2, X3 only take nonnegative integer powers", at);
        }
        Monomial out;
        for (const auto& [name, p] : m.constants.factors()) {
            const Exponent q = Exponent(p) * k;
            if (!q.is_integer()) throw ParseError("constants only take integer powers", at);
            out.constants = out.constants * ConstMonomial::symbol(name, static_cast<int>(q.num()));
        }
        out.r = m.r * k;
        out.rho = m.rho * k;
        Complex coefficient;
        if (k.is_integer()) {
            coefficient = Complex(1);
            const Complex inv = Complex(1) / c;
            for (std::int64_t s = 0; s < -k.num(); ++s) coefficient *= inv;
        } else if (c == Complex(1)) {
            coefficient = c;
        } else {
            throw ParseError("fractional powers need a unit coefficient", at);
        }
        return OperatorExpr(CoordFunction::term(coefficient, out));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const ParseOptions& options_;
};

std::string exponent_text(const Exponent& e) {
    if (e.is_integer()) return std::to_string(e.num());
    return "(" + e.str() + ")";
}

void append_factor(std::string& out, const std::string& f) {
    if (!out.empty()) out += "*";
    out += f;
}

/// Coefficient text and whether it carries its own leading minus.
std::pair<std::string, bool> coefficient_text(const Complex& c) {
    if (c.is_real()) {
        const bool neg = sgn(c.re) < 0;
        return {to_string(Rational(abs(c.re))), neg};
    }
    if (sgn(c.re) == 0) {
        const bool neg = sgn(c.im) < 0;
        const Rational a = abs(c.im);
        return {a == 1 ? "i" : to_string(a) + "*i", neg};
    }
    std::ostringstream os;
    os << "(" << to_string(c.re) << (sgn(c.im) < 0 ? "-" : "+");
    const Rational a = abs(c.im);
    if (a != 1) os << to_string(a) << "*";
    os << "i)";
    return {os.str(), false};
}

std::string factor_text(const Monomial& m, const MomentumMonomial& k) {
    std::string out;
    for (const auto& [name, p] : m.constants.factors()) append_factor(out, p == 1 ? name : name + "^" + std::to_string(p));
    for (int j = 0; j < kDim; ++j) {
        if (m.x[j] == 0) continue;
        const std::string x = "X" + std::to_string(j + 1);
        append_factor(out, m.x[j] == 1 ? x : x + "^" + std::to_string(m.x[j]));
    }
    if (!m.r.is_zero()) append_factor(out, m.r == Exponent(1) ? "r" : "r^" + exponent_text(m.r));
    if (!m.rho.is_zero()) append_factor(out, m.rho == Exponent(1) ? "rho" : "rho^" + exponent_text(m.rho));
    for (int j = 0; j < kDim; ++j) {
        if (k.k[j] == 0) continue;
        const std::string p = "P" + std::to_string(j + 1);
        append_factor(out, k.k[j] == 1 ? p : p + "^" + std::to_string(k.k[j]));
    }
    return out;
}

void append_term(std::string& out, const Complex& c, const Monomial& m, const MomentumMonomial& k) {
    auto [coef, negative] = coefficient_text(c);
    const std::string factors = factor_text(m, k);
    std::string body;
    if (factors.empty()) {
        body = coef;
    } else if (coef == "1") {
        body = factors;
    } else {
        body = coef + "*" + factors;
    }
    if (out.empty()) {
        out = negative ? "-" + body : body;
    } else {
        out += negative ? " - " : " + ";
        out += body;
    }
}

}  // namespace

OperatorExpr parse(const std::string& text, const ParseOptions& options) { return Parser(text, options).run(); }

CoordFunction parse_function(const std::string& text, const ParseOptions& options) {
    const OperatorExpr e = parse(text, options);
    if (e.momentum_degree() > 0) throw ParseError("expected a function of the coordinates only", 0);
    return e.coordinate_part();
}

std::string to_string(const OperatorExpr& a) {
    std::string out;
    for (const auto& [k, f] : a.terms()) {
        for (const auto& [m, c] : f.terms()) append_term(out, c, m, k);
    }
    return out.empty() ? "0" : out;
}

std::string to_string(const CoordFunction& f) { return to_string(OperatorExpr(f)); }

std::string to_string(const Monomial& m) {
    const std::string s = factor_text(m, {});
    return s.empty() ? "1" : s;
}

}  // namespace warpqm
