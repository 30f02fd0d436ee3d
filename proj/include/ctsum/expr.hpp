#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ctsum/telescoping.hpp"

namespace ctsum {

// Term expressions.
//
//   expr   := ["-"] term {("+" | "-") term}
//   term   := unary {("*" | "/") unary | unary}      (juxtaposition multiplies)
//   unary  := "-" unary | power
//   power  := atom ["^" int]
//   atom   := integer | name | name "(" expr {"," expr} ")" | "(" expr ")"
//
// Reserved names: n, k (the discrete variables), x, y (q^n, q^k in the
// q-case, aliases of n, k in the shift case) and q. Functions:
//   factorial(L), binom(L, L), pochhammer(a, L)              shift case
//   qpochhammer(a, L), qpochhammer(a, q^s, L), qbinom(L, L), qpow(Q)   q-case
//   pow(c, L)                                                  both
// where L is integer-linear in n, k and the parameters, Q is quadratic, and
// a, c are free of n, k. In the q-case a parameter b stands for q^b outside
// of function arguments.
struct Expr {
  enum class Kind { Num, Sym, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Num;
  mpz_class num;          // Num
  std::string name;       // Sym, Call
  int exponent = 0;       // Pow
  std::vector<Expr> args; // operands
  int line = 1, column = 1;

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

// The term is not a hypergeometric term of the requested case.
struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymbolTable {
  std::vector<std::string> params;  // at most kMaxParams
  int param_index(const std::string& s) const;
  Names names() const;  // printing names for the variable slots
};

Expr parse_term_expression(const std::string& src, const SymbolTable& syms);
std::string print_expr(const Expr& e);

// Rational function in the slots of the given case; n, k are rejected in the q-case.
RatFun compile_rational(const Expr& e, const SymbolTable& syms, ShiftCase sc);
RatFun parse_rational(const std::string& src, const SymbolTable& syms, ShiftCase sc);

// sigma_x- and sigma_y-quotients of the term; checked for compatibility.
BivariateTerm compile_quotients(const Expr& e, const SymbolTable& syms, ShiftCase sc);

}  // namespace ctsum
