#include "ctsum/ratfun.hpp"

#include <climits>
#include <stdexcept>

namespace ctsum {

static void fix_sign(Poly& n, Poly& d) {
  if (d.sign() < 0) {
    n = -n;
    d = -d;
  }
}

RatFun::RatFun(const mpq_class& c) : num(c.get_num()), den(c.get_den()) {}

RatFun::RatFun(const Poly& n, const Poly& d) {
  if (d.is_zero()) throw std::domain_error("zero denominator");
  if (n.is_zero()) {
    num = Poly();
    den = Poly(1);
    return;
  }
  if (d.is_one()) {
    num = n;
    den = d;
    return;
  }
  Poly g = gcd(n, d);
  if (g.is_one()) {
    num = n;
    den = d;
  } else {
    num = div_exact(n, g);
    den = div_exact(d, g);
  }
  fix_sign(num, den);
}

RatFun RatFun::raw(Poly n, Poly d) {
  RatFun r;
  r.num = std::move(n);
  r.den = std::move(d);
  if (r.num.is_zero()) r.den = Poly(1);
  return r;
}

mpq_class RatFun::const_value() const {
  if (!is_const()) throw std::logic_error("not a constant");
  mpq_class q(num.const_value(), den.const_value());
  q.canonicalize();
  return q;
}

RatFun RatFun::inv() const {
  if (num.is_zero()) throw std::domain_error("inverse of zero");
  Poly n = den, d = num;
  fix_sign(n, d);
  return raw(std::move(n), std::move(d));
}

RatFun RatFun::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  return raw(num.pow(unsigned(e)), den.pow(unsigned(e)));
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun();
  if (a.den.is_one() && b.den.is_one()) return RatFun::raw(a.num * b.num, Poly(1));
  Poly g1 = gcd(a.num, b.den), g2 = gcd(b.num, a.den);
  Poly an = g1.is_one() ? a.num : div_exact(a.num, g1);
  Poly bd = g1.is_one() ? b.den : div_exact(b.den, g1);
  Poly bn = g2.is_one() ? b.num : div_exact(b.num, g2);
  Poly ad = g2.is_one() ? a.den : div_exact(a.den, g2);
  Poly n = an * bn, d = ad * bd;
  fix_sign(n, d);
  return RatFun::raw(std::move(n), std::move(d));
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inv(); }

static RatFun add_impl(const RatFun& a, const RatFun& b, bool sub) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return sub ? -b : b;
  if (a.den == b.den) {
    Poly t = sub ? a.num - b.num : a.num + b.num;
    if (a.den.is_one()) return RatFun::raw(std::move(t), Poly(1));
    return RatFun(t, a.den);
  }
  Poly g = gcd(a.den, b.den);
  if (g.is_one()) {
    Poly t = sub ? a.num * b.den - b.num * a.den : a.num * b.den + b.num * a.den;
    Poly d = a.den * b.den;
    return RatFun::raw(std::move(t), std::move(d));
  }
  Poly ad = div_exact(a.den, g), bd = div_exact(b.den, g);
  Poly t = sub ? a.num * bd - b.num * ad : a.num * bd + b.num * ad;
  if (t.is_zero()) return RatFun();
  Poly g2 = gcd(t, g);
  if (!g2.is_one()) {
    t = div_exact(t, g2);
    g = div_exact(g, g2);
  }
  Poly d = ad * bd * g;
  fix_sign(t, d);
  return RatFun::raw(std::move(t), std::move(d));
}

RatFun operator+(const RatFun& a, const RatFun& b) { return add_impl(a, b, false); }
RatFun operator-(const RatFun& a, const RatFun& b) { return add_impl(a, b, true); }

RatFun sum(std::vector<RatFun> terms) {
  if (terms.empty()) return RatFun();
  while (terms.size() > 1) {
    std::vector<RatFun> next;
    for (size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms[0];
}

static std::string paren(const Poly& p, const Names& n) {
  if (p.size() == 1 && p.t[0].c > 0) return p.str(n);
  if (p.size() == 1 && p.t[0].m.is_one()) return p.str(n);
  return "(" + p.str(n) + ")";
}

std::string RatFun::str(const Names& n) const {
  if (den.is_one()) return num.str(n);
  return paren(num, n) + "/" + paren(den, n);
}

Poly sigma_poly(const Poly& p, int v, int l, ShiftCase sc) {
  if (l == 0) return p;
  if (sc == ShiftCase::Shift) return p.shift(v, mpz_class(l));
  if (l > 0) return p.qscale(v, l);
  int d = p.degree(v), a = -l;
  Poly r;
  r.t.reserve(p.t.size());
  for (auto& x : p.t) {
    Mono m = x.m;
    m.set(VQ, m.deg(VQ) + a * (d - x.m.deg(v)));
    r.t.push_back({m, x.c});
  }
  sort_combine(r.t);
  Mono mc = r.mono_content();
  Mono qpart = Mono::var(VQ, std::min(mc.deg(VQ), a * d));
  return qpart.is_one() ? r : r.div_mono(qpart);
}

RatFun sigma(const RatFun& f, int v, int l, ShiftCase sc) {
  if (l == 0 || !f.depends_on(v)) return f;
  if (sc == ShiftCase::Shift)
    return RatFun::raw(f.num.shift(v, mpz_class(l)), f.den.shift(v, mpz_class(l)));
  Poly n, d;
  if (l > 0) {
    n = f.num.qscale(v, l);
    d = f.den.qscale(v, l);
  } else {
    // Multiply numerator and denominator by q^(-l * max degree).
    int a = -l, dn = f.num.degree(v), dd = f.den.degree(v), D = std::max(dn, dd);
    auto scale = [&](const Poly& p) {
      Poly r;
      r.t.reserve(p.t.size());
      for (auto& x : p.t) {
        Mono m = x.m;
        m.set(VQ, m.deg(VQ) + a * (D - x.m.deg(v)));
        r.t.push_back({m, x.c});
      }
      sort_combine(r.t);
      return r;
    };
    n = scale(f.num);
    d = scale(f.den);
  }
  Mono g = mono_gcd(n.mono_content(), d.mono_content());
  if (!g.is_one()) {
    n = n.div_mono(g);
    d = d.div_mono(g);
  }
  fix_sign(n, d);
  return RatFun::raw(std::move(n), std::move(d));
}

Poly ycontent(const Poly& p) { return content(p, VY); }

Poly ypp(const Poly& p) {
  if (p.is_zero()) return p;
  if (!p.depends_on(VY)) return Poly(1);
  return primpart(p, VY);
}

Poly ygcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return ypp(b);
  if (b.is_zero()) return ypp(a);
  if (!a.depends_on(VY) || !b.depends_on(VY)) return Poly(1);
  return ypp(gcd(a, b));
}

bool associates(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.degree(VY) != b.degree(VY)) return false;
  return ypp(a) == ypp(b);
}

void YPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

YPoly YPoly::from(const RatFun& f) {
  if (!f.is_ypoly()) throw std::invalid_argument("not a polynomial in y");
  YPoly r;
  auto cs = f.num.coeffs(VY);
  r.c.reserve(cs.size());
  for (auto& x : cs) r.c.push_back(RatFun(x, f.den));
  r.trim();
  return r;
}

RatFun YPoly::to_rf() const {
  std::vector<RatFun> parts;
  for (size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero())
      parts.push_back(RatFun::raw(c[i].num * Poly::var(VY, int(i)), c[i].den));
  return sum(std::move(parts));
}

int LaurentPoly::hdeg() const { return terms.empty() ? INT_MIN : terms.rbegin()->first; }
int LaurentPoly::tdeg() const { return terms.empty() ? INT_MAX : terms.begin()->first; }

RatFun LaurentPoly::to_rf() const {
  std::vector<RatFun> parts;
  for (auto& [e, c] : terms) {
    if (e >= 0)
      parts.push_back(c * RatFun(Poly::var(VY, e)));
    else
      parts.push_back(c / RatFun(Poly::var(VY, -e)));
  }
  return sum(std::move(parts));
}

LaurentPoly LaurentPoly::from(const RatFun& f) {
  LaurentPoly r;
  if (f.is_zero()) return r;
  int k = f.den.min_degree(VY);
  if (f.den.degree(VY) != k) throw std::invalid_argument("denominator is not a power of y");
  Poly dc = f.den.coeff(VY, k);
  for (auto& t : f.num.t) {
    int e = t.m.deg(VY);
    RatFun c(Poly::monomial(t.c, t.m.without(VY)), dc);
    auto it = r.terms.find(e - k);
    if (it == r.terms.end())
      r.terms.emplace(e - k, c);
    else
      it->second += c;
  }
  for (auto it = r.terms.begin(); it != r.terms.end();)
    it = it->second.is_zero() ? r.terms.erase(it) : std::next(it);
  return r;
}

}  // namespace ctsum
