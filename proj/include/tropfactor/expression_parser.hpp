#pragma once

// Recursive descent parser for max-plus expressions.
//
//   expr   := [ "+" | "-" ] term { ( "+" | "-" ) term }
//   term   := posint "*" factor | int var | int | factor
//   factor := "max" "(" expr { "," expr } ")" | var | "(" expr ")"
//   var    := "x" | "y"
//
// "2x" is sugar for "2*x". The only bare constant accepted is 0, since
// max<P> carries no tropical coefficients. Whitespace is insignificant.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "tropfactor/maxplus.hpp"

namespace tropfactor {

class ParseError : public Error {
public:
    ParseError(std::size_t column, const std::string& what)
        : Error("column " + std::to_string(column) + ": " + what), column_(column) {}

    /// 1-based column of the offending character.
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

namespace detail {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view src) : src_(src) {}

    MaxPlusExpr parse() {
        MaxPlusExpr e = expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_ + 1, what); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Int integer() {
        skip_ws();
        std::size_t start = pos_;
        Int v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            try {
                v = checked_add(checked_mul(v, 10), src_[pos_] - '0');
            } catch (const OverflowError&) {
                pos_ = start;
                fail("integer literal too large");
            }
            ++pos_;
        }
        return v;
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    MaxPlusExpr expr() {
        std::vector<MaxPlusExpr> terms;
        int sign = +1;
        if (accept('-')) {
            sign = -1;
        } else {
            accept('+');
        }
        for (;;) {
            MaxPlusExpr t = term();
            terms.push_back(sign < 0 ? negated(std::move(t)) : std::move(t));
            if (accept('+')) {
                sign = +1;
            } else if (accept('-')) {
                sign = -1;
            } else {
                break;
            }
        }
        return combine(std::move(terms));
    }

    MaxPlusExpr term() {
        char c = peek();
        if (!std::isdigit(static_cast<unsigned char>(c))) return factor();
        const std::size_t at = pos_;
        Int k = integer();
        if (accept('*')) {
            if (k == 0) {
                pos_ = at;
                fail("positive scaling only");
            }
            MaxPlusExpr f = factor();
            if (f.kind() == MaxPlusExpr::Kind::linear) return MaxPlusExpr::linear(checked_mul(k, f.coefficients().x), checked_mul(k, f.coefficients().y));
            return MaxPlusExpr::scale(k, std::move(f));
        }
        char n = peek();
        if (n == 'x' || n == 'y') {
            std::size_t var_at = pos_;
            std::string w = word();
            if (w == "x") return MaxPlusExpr::linear(k, 0);
            if (w == "y") return MaxPlusExpr::linear(0, k);
            pos_ = var_at;
            fail("unknown identifier '" + w + "'");
        }
        if (k != 0) {
            pos_ = at;
            fail("nonzero tropical coefficient unsupported");
        }
        return MaxPlusExpr::linear(0, 0);
    }

    MaxPlusExpr factor() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            MaxPlusExpr e = expr();
            expect(')');
            return e;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            if (c == '\0') fail("unexpected end of input");
            fail("unexpected '" + std::string(1, c) + "'");
        }
        const std::size_t at = pos_;
        std::string w = word();
        if (w == "x") return MaxPlusExpr::linear(1, 0);
        if (w == "y") return MaxPlusExpr::linear(0, 1);
        if (w == "max") {
            expect('(');
            std::vector<MaxPlusExpr> args{expr()};
            while (accept(',')) args.push_back(expr());
            expect(')');
            return MaxPlusExpr::max(std::move(args));
        }
        pos_ = at;
        fail("unknown identifier '" + w + "'");
    }

    static MaxPlusExpr negated(MaxPlusExpr e) {
        if (e.kind() == MaxPlusExpr::Kind::linear) return MaxPlusExpr::linear(checked_neg(e.coefficients().x), checked_neg(e.coefficients().y));
        if (e.kind() == MaxPlusExpr::Kind::negate) return e.children().front();
        return MaxPlusExpr::negate(std::move(e));
    }

    // Folds all linear summands into one leaf.
    static MaxPlusExpr combine(std::vector<MaxPlusExpr> terms) {
        if (terms.size() == 1) return std::move(terms.front());
        Point lin{0, 0};
        bool has_linear = false;
        std::vector<MaxPlusExpr> rest;
        for (auto& t : terms) {
            if (t.kind() == MaxPlusExpr::Kind::linear) {
                lin += t.coefficients();
                has_linear = true;
            } else {
                rest.push_back(std::move(t));
            }
        }
        if (has_linear) rest.insert(rest.begin(), MaxPlusExpr::linear(lin.x, lin.y));
        return rest.size() == 1 ? std::move(rest.front()) : MaxPlusExpr::sum(std::move(rest));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline MaxPlusExpr parse_expression(std::string_view src) { return detail::ExpressionParser(src).parse(); }

}  // namespace tropfactor
