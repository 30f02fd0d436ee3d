#include "ctsum/expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ctsum {

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && num == o.num && name == o.name && exponent == o.exponent && args == o.args;
}

namespace {
const std::vector<std::string> kReserved = {"n", "k", "x", "y", "q"};
const std::map<std::string, std::vector<int>> kArity = {
    {"factorial", {1}}, {"binom", {2}}, {"pochhammer", {2}}, {"qpochhammer", {2, 3}},
    {"qbinom", {2}},    {"qpow", {1}},  {"pow", {2}}};

bool is_reserved(const std::string& s) {
  return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end() || kArity.count(s);
}
}  // namespace

int SymbolTable::param_index(const std::string& s) const {
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i] == s) return int(i);
  return -1;
}

Names SymbolTable::names() const {
  Names n;
  for (size_t i = 0; i < params.size() && i < size_t(kMaxParams); ++i) n.v[VP0 + i] = params[i];
  return n;
}

// --- lexer and parser -------------------------------------------------------

namespace {

struct Token {
  enum Type { Int, Name, Op, End } type;
  std::string text;
  int line, column;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t j = 0; j < n; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Int, s.substr(i, j - i), line, col});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Name, s.substr(i, j - i), line, col});
    } else if (std::string("()+-*/^,").find(c) != std::string::npos) {
      j = i + 1;
      out.push_back({Token::Op, std::string(1, c), line, col});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(j - i);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

// Polynomial view of a function argument: n -> VX, k -> VY, parameters in their slots.
RatFun form_of(const Expr& e, const SymbolTable& syms) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Num:
      return RatFun(e.num);
    case K::Sym: {
      if (e.name == "n" || e.name == "x") return RatFun::var(VX);
      if (e.name == "k" || e.name == "y") return RatFun::var(VY);
      int p = syms.param_index(e.name);
      if (p >= 0) return RatFun::var(VP0 + p);
      throw ParseError("'" + e.name + "' cannot appear in an index argument", e.line, e.column);
    }
    case K::Neg:
      return -form_of(e.args[0], syms);
    case K::Add:
      return form_of(e.args[0], syms) + form_of(e.args[1], syms);
    case K::Sub:
      return form_of(e.args[0], syms) - form_of(e.args[1], syms);
    case K::Mul:
      return form_of(e.args[0], syms) * form_of(e.args[1], syms);
    case K::Div: {
      RatFun d = form_of(e.args[1], syms);
      if (!d.is_const()) throw ParseError("index argument divided by a non-constant", e.line, e.column);
      if (d.is_zero()) throw ParseError("division by zero", e.line, e.column);
      return form_of(e.args[0], syms) / d;
    }
    case K::Pow:
      if (e.exponent < 0) throw ParseError("negative power in an index argument", e.line, e.column);
      return form_of(e.args[0], syms).pow(e.exponent);
    case K::Call:
      break;
  }
  throw ParseError("function call inside an index argument", e.line, e.column);
}

int form_degree(const RatFun& f) {
  int d = 0;
  for (auto& t : f.num.t) d = std::max(d, t.m.total());
  return d;
}

void check_form(const Expr& e, const SymbolTable& syms, int maxdeg) {
  RatFun f = form_of(e, syms);
  if (form_degree(f) > maxdeg)
    throw ParseError(maxdeg == 1 ? "argument is not linear" : "exponent is not quadratic", e.line, e.column);
  if (maxdeg == 1)
    for (int v : {VX, VY}) {
      RatFun c(f.num.coeff(v, 1), f.den);
      if (!c.den.is_one()) throw ParseError("non-integer coefficient of n or k", e.line, e.column);
    }
}

class Parser {
 public:
  Parser(const std::string& s, const SymbolTable& syms) : toks_(lex(s)), syms_(syms) {}

  Expr parse() {
    Expr e = expr();
    if (peek().type != Token::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  const SymbolTable& syms_;

  const Token& peek() const { return toks_[pos_]; }
  bool is_op(const char* s) const { return peek().type == Token::Op && peek().text == s; }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, peek().line, peek().column); }
  void expect(const char* s) {
    if (!is_op(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }

  static Expr node(Expr::Kind k, std::vector<Expr> args, const Token& at) {
    Expr e;
    e.kind = k;
    e.args = std::move(args);
    e.line = at.line;
    e.column = at.column;
    return e;
  }
  // Binary nodes are located at their left operand.
  static Expr node(Expr::Kind k, std::vector<Expr> args) {
    Token at{Token::Op, "", args[0].line, args[0].column};
    return node(k, std::move(args), at);
  }

  Expr expr() {
    Expr e = term();
    while (is_op("+") || is_op("-")) {
      Token t = toks_[pos_++];
      Expr r = term();
      e = node(t.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, {std::move(e), std::move(r)});
    }
    return e;
  }

  bool starts_atom() const {
    return peek().type == Token::Int || peek().type == Token::Name || is_op("(");
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (is_op("*") || is_op("/")) {
        Token t = toks_[pos_++];
        Expr r = unary();
        e = node(t.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, {std::move(e), std::move(r)});
      } else if (starts_atom()) {
        Expr r = unary();
        e = node(Expr::Kind::Mul, {std::move(e), std::move(r)});
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (is_op("-")) {
      Token t = toks_[pos_++];
      return node(Expr::Kind::Neg, {unary()}, t);
    }
    return power();
  }

  int exponent() {
    bool paren = is_op("(");
    if (paren) ++pos_;
    bool neg = is_op("-");
    if (neg) ++pos_;
    if (peek().type != Token::Int) fail("expected an integer exponent");
    mpz_class v(peek().text);
    if (v > 1000000) fail("exponent too large");
    ++pos_;
    if (paren) expect(")");
    int e = int(v.get_si());
    return neg ? -e : e;
  }

  Expr power() {
    Token at = peek();
    Expr a = atom();
    if (is_op("^")) {
      ++pos_;
      Expr p = node(Expr::Kind::Pow, {std::move(a)}, at);
      p.exponent = exponent();
      if (is_op("^")) fail("ambiguous repeated '^'; use parentheses");
      return p;
    }
    return a;
  }

  Expr atom() {
    Token t = peek();
    if (t.type == Token::Int) {
      ++pos_;
      Expr e = node(Expr::Kind::Num, {}, t);
      e.num = mpz_class(t.text);
      return e;
    }
    if (is_op("(")) {
      ++pos_;
      Expr e = expr();
      expect(")");
      return e;
    }
    if (t.type != Token::Name) fail(t.type == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    ++pos_;
    auto f = kArity.find(t.text);
    if (f == kArity.end()) {
      if (is_op("(")) throw ParseError("unknown function '" + t.text + "'", t.line, t.column);
      bool known = std::find(kReserved.begin(), kReserved.end(), t.text) != kReserved.end() ||
                   syms_.param_index(t.text) >= 0;
      if (!known) throw ParseError("unknown symbol '" + t.text + "'", t.line, t.column);
      Expr e = node(Expr::Kind::Sym, {}, t);
      e.name = t.text;
      return e;
    }
    Expr e = node(Expr::Kind::Call, {}, t);
    e.name = t.text;
    expect("(");
    e.args.push_back(expr());
    while (is_op(",")) {
      ++pos_;
      e.args.push_back(expr());
    }
    expect(")");
    const auto& ar = f->second;
    if (std::find(ar.begin(), ar.end(), int(e.args.size())) == ar.end())
      throw ParseError("wrong number of arguments to " + e.name, t.line, t.column);
    validate_call(e);
    return e;
  }

  void validate_call(const Expr& e) {
    const std::string& f = e.name;
    if (f == "qpow") {
      check_form(e.args[0], syms_, 2);
    } else if (f == "pow" || f == "qpochhammer") {
      check_form(e.args.back(), syms_, 1);
    } else {
      for (auto& a : e.args) check_form(a, syms_, 1);
    }
  }
};

// --- printer ----------------------------------------------------------------

int level(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Add:
    case K::Sub:
      return 1;
    case K::Mul:
    case K::Div:
      return 2;
    case K::Neg:
      return 3;
    case K::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string print_at(const Expr& e, int minlevel) {
  using K = Expr::Kind;
  std::string s;
  switch (e.kind) {
    case K::Num:
      s = e.num.get_str();
      break;
    case K::Sym:
      s = e.name;
      break;
    case K::Neg:
      s = "-" + print_at(e.args[0], 3);
      break;
    case K::Add:
    case K::Sub:
      s = print_at(e.args[0], 1) + (e.kind == K::Add ? " + " : " - ") + print_at(e.args[1], 2);
      break;
    case K::Mul:
    case K::Div:
      s = print_at(e.args[0], 2) + (e.kind == K::Mul ? "*" : "/") + print_at(e.args[1], 3);
      break;
    case K::Pow:
      s = print_at(e.args[0], 5) + "^" +
          (e.exponent < 0 ? "(" + std::to_string(e.exponent) + ")" : std::to_string(e.exponent));
      break;
    case K::Call:
      s = e.name + "(";
      for (size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print_at(e.args[i], 1);
      s += ")";
      break;
  }
  return level(e) < minlevel ? "(" + s + ")" : s;
}

}  // namespace

Expr parse_term_expression(const std::string& src, const SymbolTable& syms) {
  if (syms.params.size() > size_t(kMaxParams))
    throw ParseError("at most " + std::to_string(kMaxParams) + " parameters are supported", 1, 1);
  for (auto& p : syms.params) {
    bool ident = !p.empty() && (std::isalpha(static_cast<unsigned char>(p[0])) || p[0] == '_') &&
                 std::all_of(p.begin(), p.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    if (!ident || is_reserved(p)) throw ParseError("invalid parameter name '" + p + "'", 1, 1);
  }
  return Parser(src, syms).parse();
}

std::string print_expr(const Expr& e) { return print_at(e, 1); }

// --- compiler ---------------------------------------------------------------

namespace {

struct Hyp {
  bool is_value = true;
  RatFun value;
  RatFun fx{1}, gy{1};
};

class Compiler {
 public:
  Compiler(const SymbolTable& syms, ShiftCase sc) : syms_(syms), sc_(sc) {}

  Hyp compile(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Num:
        return value(RatFun(e.num));
      case K::Sym:
        return value(symbol(e));
      case K::Neg: {
        Hyp h = compile(e.args[0]);
        if (h.is_value) h.value = -h.value;
        return h;
      }
      case K::Add:
      case K::Sub: {
        Hyp a = compile(e.args[0]), b = compile(e.args[1]);
        if (!a.is_value || !b.is_value)
          throw CompileError("a sum involving special functions is not a hypergeometric term");
        return value(e.kind == K::Add ? a.value + b.value : a.value - b.value);
      }
      case K::Mul:
      case K::Div: {
        Hyp a = compile(e.args[0]), b = compile(e.args[1]);
        bool div = e.kind == K::Div;
        if (a.is_value && b.is_value) {
          if (div && b.value.is_zero()) throw CompileError("division by zero");
          return value(div ? a.value / b.value : a.value * b.value);
        }
        to_quotients(a);
        to_quotients(b);
        Hyp r;
        r.is_value = false;
        r.fx = div ? a.fx / b.fx : a.fx * b.fx;
        r.gy = div ? a.gy / b.gy : a.gy * b.gy;
        return r;
      }
      case K::Pow: {
        Hyp a = compile(e.args[0]);
        if (a.is_value) {
          if (a.value.is_zero() && e.exponent < 0) throw CompileError("division by zero");
          return value(a.value.pow(e.exponent));
        }
        a.fx = a.fx.pow(e.exponent);
        a.gy = a.gy.pow(e.exponent);
        return a;
      }
      case K::Call:
        return call(e);
    }
    throw CompileError("unsupported expression");
  }

  void to_quotients(Hyp& h) const {
    if (!h.is_value) return;
    if (h.value.is_zero()) throw CompileError("the term is identically zero");
    h.fx = sigma_x(h.value, 1, sc_) / h.value;
    h.gy = sigma_y(h.value, 1, sc_) / h.value;
    h.is_value = false;
  }

 private:
  const SymbolTable& syms_;
  ShiftCase sc_;

  static Hyp value(RatFun v) {
    Hyp h;
    h.value = std::move(v);
    return h;
  }

  RatFun symbol(const Expr& e) const {
    const std::string& s = e.name;
    int p = syms_.param_index(s);
    if (p >= 0) return RatFun::var(VP0 + p);
    if (sc_ == ShiftCase::Shift) {
      if (s == "n" || s == "x") return RatFun::var(VX);
      if (s == "k" || s == "y") return RatFun::var(VY);
      throw CompileError("'q' is only available in the q-case");
    }
    if (s == "x") return RatFun::var(VX);
    if (s == "y") return RatFun::var(VY);
    if (s == "q") return RatFun::var(VQ);
    throw CompileError("in the q-case '" + s + "' may only appear in function arguments; use x = q^n, y = q^k");
  }

  RatFun xy_free_value(const Expr& e, const char* what) {
    Hyp h = compile(e);
    if (!h.is_value || h.value.depends_on(VX) || h.value.depends_on(VY))
      throw CompileError(std::string(what) + " must not depend on n or k");
    return h.value;
  }

  static mpz_class int_coeff(const RatFun& f, int v) {
    RatFun c(f.num.coeff(v, 1), f.den);
    if (!c.is_const() || !c.den.is_one()) throw CompileError("non-integer index coefficient");
    return c.num.const_value();
  }

  // Gamma(A + t) / Gamma(A).
  static RatFun gamma_ratio(const RatFun& A, long t) {
    RatFun r(1);
    for (long j = 0; j < t; ++j) r *= A + RatFun(j);
    for (long j = 1; j <= -t; ++j) r /= A - RatFun(j);
    return r;
  }

  static void gamma_factor(Hyp& h, const RatFun& A, int sign) {
    RatFun fx = gamma_ratio(A, int_coeff(A, VX).get_si());
    RatFun gy = gamma_ratio(A, int_coeff(A, VY).get_si());
    if (sign < 0) {
      fx = fx.inv();
      gy = gy.inv();
    }
    h.fx *= fx;
    h.gy *= gy;
  }

  // q^(s * L) for a linear L with integer coefficients.
  static RatFun qmono(const RatFun& L, long s) {
    if (!L.den.is_one()) throw CompileError("q-exponent with non-integer coefficients");
    RatFun r(1);
    for (auto& t : L.num.t) {
      if (t.m.total() > 1) throw CompileError("q-exponent is not linear");
      if (!t.c.fits_slong_p()) throw CompileError("q-exponent too large");
      long e = s * t.c.get_si();
      int slot = VQ;
      for (int v = 0; v < kMaxVars; ++v)
        if (t.m.deg(v)) slot = v;
      RatFun b = RatFun::var(slot).pow(int(std::labs(e)));
      r *= e >= 0 ? b : b.inv();
    }
    return r;
  }

  // (a; q^s)_L
  void qpoch_factor(Hyp& h, const RatFun& a, long s, const RatFun& L, int sign) {
    RatFun P = qmono(L, s);
    auto ratio = [&](long t) {
      RatFun r(1);
      for (long j = 0; j < t; ++j) r *= RatFun(1) - a * P * RatFun::var(VQ).pow(int(s * j));
      for (long j = 1; j <= -t; ++j) r /= RatFun(1) - a * P / RatFun::var(VQ).pow(int(s * j));
      return r;
    };
    RatFun fx = ratio(int_coeff(L, VX).get_si()), gy = ratio(int_coeff(L, VY).get_si());
    if (sign < 0) {
      fx = fx.inv();
      gy = gy.inv();
    }
    h.fx *= fx;
    h.gy *= gy;
  }

  void need(ShiftCase c, const std::string& f) const {
    if (c != sc_)
      throw CompileError(f + " is only available in the " + (c == ShiftCase::Q ? "q-case" : "shift case"));
  }

  Hyp call(const Expr& e) {
    const std::string& f = e.name;
    Hyp h;
    h.is_value = false;
    auto form = [&](size_t i) { return form_of(e.args[i], syms_); };
    RatFun one(1);
    if (f == "factorial") {
      need(ShiftCase::Shift, f);
      gamma_factor(h, form(0) + one, 1);
    } else if (f == "binom") {
      need(ShiftCase::Shift, f);
      RatFun A = form(0), B = form(1);
      gamma_factor(h, A + one, 1);
      gamma_factor(h, B + one, -1);
      gamma_factor(h, A - B + one, -1);
    } else if (f == "pochhammer") {
      need(ShiftCase::Shift, f);
      RatFun a = form(0), L = form(1);
      gamma_factor(h, a + L, 1);
      gamma_factor(h, a, -1);
    } else if (f == "qpochhammer") {
      need(ShiftCase::Q, f);
      RatFun a = xy_free_value(e.args[0], "the base of qpochhammer");
      long s = 1;
      if (e.args.size() == 3) {
        RatFun nome = xy_free_value(e.args[1], "the nome of qpochhammer");
        const Poly& nm = nome.num;
        if (!nome.den.is_one() || !nm.is_monomial() || nm.lc() != 1 || nm.lm().deg(VQ) < 1 ||
            nm.lm().total() != nm.lm().deg(VQ))
          throw CompileError("the nome of qpochhammer must be q^s with s >= 1");
        s = nm.lm().deg(VQ);
      }
      if (a.is_zero()) return h;
      qpoch_factor(h, a, s, form(e.args.size() - 1), 1);
    } else if (f == "qbinom") {
      need(ShiftCase::Q, f);
      RatFun A = form(0), B = form(1), q = RatFun::var(VQ);
      qpoch_factor(h, q, 1, A, 1);
      qpoch_factor(h, q, 1, B, -1);
      qpoch_factor(h, q, 1, A - B, -1);
    } else if (f == "qpow") {
      need(ShiftCase::Q, f);
      RatFun Q = form(0);
      h.fx = qmono(sigma_x(Q, 1, ShiftCase::Shift) - Q, 1);
      h.gy = qmono(sigma_y(Q, 1, ShiftCase::Shift) - Q, 1);
    } else if (f == "pow") {
      RatFun c = xy_free_value(e.args[0], "the base of pow");
      if (c.is_zero()) throw CompileError("the term is identically zero");
      RatFun L = form(1);
      long a = int_coeff(L, VX).get_si(), b = int_coeff(L, VY).get_si();
      h.fx = a >= 0 ? c.pow(int(a)) : c.inv().pow(int(-a));
      h.gy = b >= 0 ? c.pow(int(b)) : c.inv().pow(int(-b));
    } else {
      throw CompileError("unknown function " + f);
    }
    if (h.fx.is_zero() || h.gy.is_zero()) throw CompileError("the term vanishes identically");
    return h;
  }
};

}  // namespace

RatFun compile_rational(const Expr& e, const SymbolTable& syms, ShiftCase sc) {
  Hyp h = Compiler(syms, sc).compile(e);
  if (!h.is_value) throw CompileError("expected a rational function");
  return h.value;
}

RatFun parse_rational(const std::string& src, const SymbolTable& syms, ShiftCase sc) {
  return compile_rational(parse_term_expression(src, syms), syms, sc);
}

BivariateTerm compile_quotients(const Expr& e, const SymbolTable& syms, ShiftCase sc) {
  Compiler c(syms, sc);
  Hyp h = c.compile(e);
  c.to_quotients(h);
  BivariateTerm T{h.fx, h.gy, sc};
  if (!check_compatibility(T)) throw IncompatibleTerm("compiled quotients are not compatible");
  return T;
}

}  // namespace ctsum
