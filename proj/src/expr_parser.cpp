#include "mqc/expr_parser.hpp"

#include <cctype>

namespace mqc {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::unique_ptr<Expr> parse() {
        auto e = expr();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
                ++col_;
            }
        }
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
    }

    // Returns the ASCII operator at the cursor, mapping U+2212 and U+00B7.
    char peek_op() {
        skip_space();
        if (pos_ >= text_.size()) return '\0';
        if (text_.substr(pos_, 3) == "\xE2\x88\x92") return '-';
        if (text_.substr(pos_, 2) == "\xC2\xB7") return '*';
        return text_[pos_];
    }

    void consume_op() {
        if (text_.substr(pos_, 3) == "\xE2\x88\x92") advance(3);
        else if (text_.substr(pos_, 2) == "\xC2\xB7") advance(2);
        else advance(1);
    }

    std::unique_ptr<Expr> node(Expr::Kind k, int line, int col) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->line = line;
        e->column = col;
        return e;
    }

    std::unique_ptr<Expr> binary(Expr::Kind k, std::unique_ptr<Expr> a, std::unique_ptr<Expr> b,
                                 int line, int col) {
        auto e = node(k, line, col);
        e->args.push_back(std::move(a));
        e->args.push_back(std::move(b));
        return e;
    }

    std::unique_ptr<Expr> expr() {
        auto lhs = term();
        while (true) {
            char c = peek_op();
            if (c != '+' && c != '-') return lhs;
            int l = line_, cl = col_;
            consume_op();
            lhs = binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), term(), l, cl);
        }
    }

    std::unique_ptr<Expr> term() {
        auto lhs = unary();
        while (true) {
            char c = peek_op();
            if (c != '*' && c != '/') return lhs;
            int l = line_, cl = col_;
            consume_op();
            lhs = binary(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs), unary(), l, cl);
        }
    }

    std::unique_ptr<Expr> unary() {
        char c = peek_op();
        if (c == '-' || c == '+') {
            int l = line_, cl = col_;
            consume_op();
            auto inner = unary();
            if (c == '+') return inner;
            auto e = node(Expr::Kind::Neg, l, cl);
            e->args.push_back(std::move(inner));
            return e;
        }
        return power();
    }

    std::unique_ptr<Expr> power() {
        auto base = atom();
        if (peek_op() != '^') return base;
        int l = line_, cl = col_;
        consume_op();
        bool negative = false;
        if (peek_op() == '-') {
            negative = true;
            consume_op();
        }
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
        if (start == pos_) fail("expected an integer exponent");
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 6) fail("exponent too large");
        auto e = node(Expr::Kind::Pow, l, cl);
        e->exponent = std::stol(digits) * (negative ? -1 : 1);
        e->args.push_back(std::move(base));
        return e;
    }

    std::unique_ptr<Expr> atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        int l = line_, cl = col_;
        char c = text_[pos_];
        if (c == '(') {
            advance(1);
            auto e = expr();
            if (peek_op() != ')') fail("expected ')'");
            advance(1);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
            auto e = node(Expr::Kind::Number, l, cl);
            e->number = mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                advance(1);
            auto e = node(Expr::Kind::Ident, l, cl);
            e->name = std::string(text_.substr(start, pos_ - start));
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

struct PolyOps {
    RingPtr ring;

    GradedPoly number(const mpz_class& n) { return GradedPoly::constant(ring, Rational(n, mpz_class(1))); }
    GradedPoly ident(const Expr& e) {
        if (!ring->index_of(e.name)) throw ParseError("unknown generator '" + e.name + "'", e.line, e.column);
        return GradedPoly::generator(ring, e.name);
    }
    GradedPoly neg(GradedPoly a) { return -a; }
    GradedPoly add(GradedPoly a, const GradedPoly& b) { return a + b; }
    GradedPoly sub(GradedPoly a, const GradedPoly& b) { return a - b; }
    GradedPoly mul(const GradedPoly& a, const GradedPoly& b) { return a * b; }
    GradedPoly div(const GradedPoly& a, const GradedPoly& b, const Expr& at) {
        if (!b.is_unit()) throw ParseError("division by a non-unit", at.line, at.column);
        return a * b.inverse();
    }
    GradedPoly pow(const GradedPoly& a, long e, const Expr& at) {
        if (e >= 0) return a.pow(static_cast<unsigned>(e));
        if (!a.is_unit()) throw ParseError("negative power of a non-unit", at.line, at.column);
        return a.inverse().pow(static_cast<unsigned>(-e));
    }
};

} // namespace

std::unique_ptr<Expr> parse_expr(std::string_view text) { return Parser(text).parse(); }

GradedPoly parse_poly(const RingPtr& ring, std::string_view text) {
    auto tree = parse_expr(text);
    PolyOps ops{ring};
    return evaluate<GradedPoly>(*tree, ops);
}

} // namespace mqc
