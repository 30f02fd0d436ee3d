#include <algorithm>
#include <stdexcept>

#include "ctsum/poly.hpp"

namespace ctsum {

namespace {

struct HeuristicFailed {};

struct HeuResult {
  Poly h, cff, cfg;
};

mpz_class max_norm(const Poly& p) {
  mpz_class m = 0;
  for (auto& x : p.t)
    if (mpz_cmpabs(x.c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(x.c);
  return m;
}

// Rebuilds the v-adic expansion of the integer coefficients of h using the
// balanced residue system modulo x.
Poly interpolate(const Poly& h, const mpz_class& x, int v) {
  std::vector<Term> out;
  mpz_class half = x / 2, c, g;
  for (auto& term : h.t) {
    c = term.c;
    int e = 0;
    while (c != 0) {
      mpz_fdiv_r(g.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      if (g > half) g -= x;
      if (g != 0) {
        Mono m = term.m;
        m.set(v, e);
        out.push_back({m, g});
      }
      c -= g;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      ++e;
    }
  }
  sort_combine(out);
  Poly r;
  r.t = std::move(out);
  if (r.sign() < 0) r = -r;
  return r;
}

Poly prim_int(const Poly& p) {
  mpz_class c = p.content();
  return (c == 1 || c == 0) ? p : p.div_scalar(c);
}

HeuResult heu_gcd(const Poly& f0, const Poly& g0, int depth) {
  if (f0.is_zero() && g0.is_zero()) return {Poly(), Poly(), Poly()};
  if (f0.is_zero()) {
    Poly h = g0.sign() < 0 ? -g0 : g0;
    return {h, Poly(), Poly(g0.sign() < 0 ? -1 : 1)};
  }
  if (g0.is_zero()) {
    Poly h = f0.sign() < 0 ? -f0 : f0;
    return {h, Poly(f0.sign() < 0 ? -1 : 1), Poly()};
  }
  mpz_class cf = f0.content(), cg = g0.content(), gc;
  mpz_gcd(gc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  Poly f = f0.div_scalar(gc), g = g0.div_scalar(gc);
  unsigned mask = f.var_mask() | g.var_mask();
  if (!mask) {
    mpz_class a = f.const_value(), b = g.const_value(), h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {Poly(mpz_class(h * gc)), Poly(mpz_class(a / h)), Poly(mpz_class(b / h))};
  }
  if (f.is_const() || g.is_const()) {
    mpz_class a = f.content(), b = g.content(), h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {Poly(mpz_class(h * gc)), f.div_scalar(h), g.div_scalar(h)};
  }
  int v = 0;
  while (!(mask & (1u << v))) ++v;
  mpz_class fn = max_norm(f), gn = max_norm(g);
  mpz_class B = 2 * std::min(fn, gn) + 29;
  mpz_class s = sqrt(B);
  mpz_class x = std::min(B, mpz_class(99 * s));
  mpz_class alt = 2 * std::min(mpz_class(fn / abs(f.lc())), mpz_class(gn / abs(g.lc()))) + 4;
  if (alt > x) x = alt;
  for (int it = 0; it < 6; ++it) {
    Poly ff = f.eval(v, x), gg = g.eval(v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      HeuResult r = heu_gcd(ff, gg, depth + 1);
      Poly h = prim_int(interpolate(r.h, x, v));
      if (!h.is_zero()) {
        if (auto cff = exact_div(f, h))
          if (auto cfg = exact_div(g, h)) return {h.mul_scalar(gc), *cff, *cfg};
      }
      Poly cff = interpolate(r.cff, x, v);
      if (!cff.is_zero()) {
        if (auto h2 = exact_div(f, cff))
          if (auto cfg = exact_div(g, *h2)) return {h2->mul_scalar(gc), cff, *cfg};
      }
      Poly cfg = interpolate(r.cfg, x, v);
      if (!cfg.is_zero()) {
        if (auto h3 = exact_div(g, cfg))
          if (auto cff2 = exact_div(f, *h3)) return {h3->mul_scalar(gc), *cff2, cfg};
      }
    }
    mpz_class r4 = sqrt(mpz_class(sqrt(x)));
    x = 73794 * x * r4 / 27011;
  }
  throw HeuristicFailed{};
}

Poly positive(Poly p) { return p.sign() < 0 ? -p : p; }

}  // namespace


Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive(b);
  if (b.is_zero()) return positive(a);
  if (a.is_const() || b.is_const()) {
    mpz_class ca = a.content(), cb = b.content(), h;
    mpz_gcd(h.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return Poly(h);
  }
  if (a == b) return positive(a);
  Mono ma = a.mono_content(), mb = b.mono_content();
  Mono mg = mono_gcd(ma, mb);
  if (a.is_monomial() || b.is_monomial()) {
    mpz_class ca = a.content(), cb = b.content(), h;
    mpz_gcd(h.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return Poly::monomial(h, mg);
  }
  Poly a1 = ma.is_one() ? a : a.div_mono(ma);
  Poly b1 = mb.is_one() ? b : b.div_mono(mb);
  Poly g;
  try {
    g = heu_gcd(a1, b1, 0).h;
  } catch (const HeuristicFailed&) {
    g = gcd_prs(a1, b1);
  }
  g = positive(g);
  if (!mg.is_one()) g = g.mul_term(1, mg);
  return g;
}

Poly gcd_prs(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive(b);
  if (b.is_zero()) return positive(a);
  unsigned ma = a.var_mask(), mb = b.var_mask();
  if (!ma || !mb) {
    mpz_class ca = a.content(), cb = b.content(), h;
    mpz_gcd(h.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return Poly(h);
  }
  unsigned only = ma ^ mb;
  if (only) {
    int v = 0;
    while (!(only & (1u << v))) ++v;
    if (a.depends_on(v)) return gcd_prs(content(a, v), b);
    return gcd_prs(a, content(b, v));
  }
  int v = 0;
  while (!(ma & (1u << v))) ++v;
  Poly ca = content(a, v), cb = content(b, v);
  Poly c = gcd_prs(ca, cb);
  Poly p = div_exact(a, ca), r = div_exact(b, cb);
  if (p.degree(v) < r.degree(v)) std::swap(p, r);
  while (!r.is_zero()) {
    Poly rem = prem(p, r, v);
    p = std::move(r);
    r = rem.is_zero() ? Poly() : primpart(rem, v);
  }
  return positive(c * primpart(p, v));
}

}  // namespace ctsum
