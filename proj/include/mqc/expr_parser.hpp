#pragma once

#include "mqc/errors.hpp"
#include "mqc/graded_poly.hpp"

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace mqc {

/// Syntax tree for the small exact-expression language shared by the
/// polynomial reader and the loop-expression reader:
///
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := ('-' | '+') unary | power
///   power := atom ('^' ['-'] integer)?
///   atom  := integer | identifier | '(' expr ')'
///
/// The UTF-8 minus sign and middle dot are accepted as '-' and '*'.
struct Expr {
    enum class Kind { Number, Ident, Neg, Add, Sub, Mul, Div, Pow };

    Kind kind;
    int line = 1;
    int column = 1;
    mpz_class number;      // Number
    std::string name;      // Ident
    long exponent = 0;     // Pow
    std::vector<std::unique_ptr<Expr>> args;
};

std::unique_ptr<Expr> parse_expr(std::string_view text);

/// Folds a tree with caller-supplied leaf constructors and arithmetic.
/// `Ops` provides number(mpz), ident(const Expr&), add, sub, mul, div, neg, pow(T, long).
template <class T, class Ops>
T evaluate(const Expr& e, Ops& ops) {
    switch (e.kind) {
    case Expr::Kind::Number: return ops.number(e.number);
    case Expr::Kind::Ident: return ops.ident(e);
    case Expr::Kind::Neg: return ops.neg(evaluate<T>(*e.args[0], ops));
    case Expr::Kind::Add: return ops.add(evaluate<T>(*e.args[0], ops), evaluate<T>(*e.args[1], ops));
    case Expr::Kind::Sub: return ops.sub(evaluate<T>(*e.args[0], ops), evaluate<T>(*e.args[1], ops));
    case Expr::Kind::Mul: return ops.mul(evaluate<T>(*e.args[0], ops), evaluate<T>(*e.args[1], ops));
    case Expr::Kind::Div: {
        T lhs = evaluate<T>(*e.args[0], ops);
        T rhs = evaluate<T>(*e.args[1], ops);
        return ops.div(std::move(lhs), std::move(rhs), e);
    }
    case Expr::Kind::Pow: return ops.pow(evaluate<T>(*e.args[0], ops), e.exponent, e);
    }
    throw ParseError("unknown expression node", e.line, e.column);
}

/// Reads the text form produced by GradedPoly::str() (and any expression
/// over the ring's generators whose divisors are units).
GradedPoly parse_poly(const RingPtr& ring, std::string_view text);

} // namespace mqc
