#include "ctsum/poly.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ctsum {

void Mono::set(int v, int e) {
  if (e < 0 || e > 0xffff) throw std::overflow_error("exponent out of range");
  uint64_t val = uint64_t(e);
  if (v < 4) {
    int s = 48 - 16 * v;
    hi = (hi & ~(uint64_t(0xffff) << s)) | (val << s);
  } else {
    int s = 48 - 16 * (v - 4);
    lo = (lo & ~(uint64_t(0xffff) << s)) | (val << s);
  }
}

bool Mono::divides(const Mono& o) const {
  for (int v = 0; v < kMaxVars; ++v)
    if (deg(v) > o.deg(v)) return false;
  return true;
}

int Mono::total() const {
  int s = 0;
  for (int v = 0; v < kMaxVars; ++v) s += deg(v);
  return s;
}

Mono mono_gcd(const Mono& a, const Mono& b) {
  Mono m;
  for (int v = 0; v < kMaxVars; ++v) m.set(v, std::min(a.deg(v), b.deg(v)));
  return m;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono m;
  for (int v = 0; v < kMaxVars; ++v) m.set(v, std::max(a.deg(v), b.deg(v)));
  return m;
}

const Names& default_names() {
  static const Names n;
  return n;
}

Poly::Poly(long c) {
  if (c != 0) t.push_back({Mono{}, mpz_class(c)});
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) t.push_back({Mono{}, c});
}

Poly Poly::var(int v, int e) {
  Poly p;
  p.t.push_back({Mono::var(v, e), mpz_class(1)});
  return p;
}

Poly Poly::monomial(const mpz_class& c, const Mono& m) {
  Poly p;
  if (c != 0) p.t.push_back({m, c});
  return p;
}

int Poly::degree(int v) const {
  if (t.empty()) return -1;
  if (v == VY) return t[0].m.deg(VY);
  int d = 0;
  for (auto& x : t) d = std::max(d, x.m.deg(v));
  return d;
}

int Poly::min_degree(int v) const {
  if (t.empty()) return -1;
  int d = 0xffff;
  for (auto& x : t) d = std::min(d, x.m.deg(v));
  return d;
}

int Poly::total_degree() const {
  int d = -1;
  for (auto& x : t) d = std::max(d, x.m.total());
  return d;
}

bool Poly::depends_on(int v) const {
  for (auto& x : t)
    if (x.m.deg(v)) return true;
  return false;
}

unsigned Poly::var_mask() const {
  unsigned m = 0;
  Mono d = max_degrees();
  for (int v = 0; v < kMaxVars; ++v)
    if (d.deg(v)) m |= 1u << v;
  return m;
}

Mono Poly::max_degrees() const {
  Mono d;
  for (auto& x : t) d = mono_lcm(d, x.m);
  return d;
}

size_t Poly::max_bits() const {
  size_t b = 0;
  for (auto& x : t) b = std::max(b, mpz_sizeinbase(x.c.get_mpz_t(), 2));
  return b;
}

void sort_combine(std::vector<Term>& v) {
  std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
  size_t w = 0;
  for (size_t i = 0; i < v.size();) {
    size_t j = i + 1;
    while (j < v.size() && v[j].m == v[i].m) {
      v[i].c += v[j].c;
      ++j;
    }
    if (v[i].c != 0) {
      if (w != i) v[w] = std::move(v[i]);
      ++w;
    }
    i = j;
  }
  v.resize(w);
}

Poly Poly::coeff(int v, int e) const {
  Poly r;
  for (auto& x : t)
    if (x.m.deg(v) == e) r.t.push_back({x.m.without(v), x.c});
  if (v != VY) sort_combine(r.t);
  return r;
}

std::vector<Poly> Poly::coeffs(int v) const {
  std::vector<Poly> r(std::max(degree(v) + 1, 0));
  for (auto& x : t) r[x.m.deg(v)].t.push_back({x.m.without(v), x.c});
  if (v != VY)
    for (auto& p : r) sort_combine(p.t);
  return r;
}

Poly Poly::from_coeffs(int v, const std::vector<Poly>& cs) {
  Poly r;
  for (size_t e = 0; e < cs.size(); ++e) {
    Mono m = Mono::var(v, int(e));
    for (auto& x : cs[e].t) r.t.push_back({x.m * m, x.c});
  }
  sort_combine(r.t);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.t) x.c = -x.c;
  return r;
}

static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool sub) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].m > b[j].m) {
      r.push_back(a[i++]);
    } else if (b[j].m > a[i].m) {
      r.push_back(b[j++]);
      if (sub) r.back().c = -r.back().c;
    } else {
      mpz_class c = sub ? mpz_class(a[i].c - b[j].c) : mpz_class(a[i].c + b[j].c);
      if (c != 0) r.push_back({a[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) r.push_back(a[i++]);
  while (j < b.size()) {
    r.push_back(b[j++]);
    if (sub) r.back().c = -r.back().c;
  }
  return r;
}

// In-place merge that moves terms; used by the multiplication tree.
static std::vector<Term> merge_move(std::vector<Term>&& a, std::vector<Term>&& b) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].m > b[j].m) {
      r.push_back(std::move(a[i++]));
    } else if (b[j].m > a[i].m) {
      r.push_back(std::move(b[j++]));
    } else {
      a[i].c += b[j].c;
      if (a[i].c != 0) r.push_back(std::move(a[i]));
      ++i;
      ++j;
    }
  }
  while (i < a.size()) r.push_back(std::move(a[i++]));
  while (j < b.size()) r.push_back(std::move(b[j++]));
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t.empty()) return *this;
  t = merge(t, o.t, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.t.empty()) return *this;
  t = merge(t, o.t, true);
  return *this;
}

static void check_overflow(const Poly& a, const Poly& b) {
  Mono da = a.max_degrees(), db = b.max_degrees();
  for (int v = 0; v < kMaxVars; ++v)
    if (da.deg(v) + db.deg(v) > 0xffff) throw std::overflow_error("exponent overflow");
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.t.empty() || b.t.empty()) return Poly();
  const Poly& s = a.t.size() <= b.t.size() ? a : b;
  const Poly& l = a.t.size() <= b.t.size() ? b : a;
  check_overflow(a, b);
  if (s.t.size() == 1) return l.mul_term(s.t[0].c, s.t[0].m);
  std::vector<std::vector<Term>> rows;
  rows.reserve(s.t.size());
  for (auto& x : s.t) rows.push_back(l.mul_term(x.c, x.m).t);
  while (rows.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((rows.size() + 1) / 2);
    for (size_t i = 0; i + 1 < rows.size(); i += 2)
      next.push_back(merge_move(std::move(rows[i]), std::move(rows[i + 1])));
    if (rows.size() % 2) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  Poly r;
  r.t = std::move(rows[0]);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly Poly::mul_term(const mpz_class& c, const Mono& m) const {
  Poly r;
  if (c == 0) return r;
  r.t.reserve(t.size());
  for (auto& x : t) r.t.push_back({x.m * m, x.c * c});
  return r;
}

Poly Poly::mul_scalar(const mpz_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& x : r.t) x.c *= c;
  return r;
}

Poly Poly::div_scalar(const mpz_class& c) const {
  Poly r = *this;
  for (auto& x : r.t) mpz_divexact(x.c.get_mpz_t(), x.c.get_mpz_t(), c.get_mpz_t());
  return r;
}

Poly Poly::div_mono(const Mono& m) const {
  Poly r = *this;
  for (auto& x : r.t) x.m = x.m / m;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (t.size() != o.t.size()) return false;
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i].m != o.t[i].m || t[i].c != o.t[i].c) return false;
  return true;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (auto& x : t) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Mono Poly::mono_content() const {
  if (t.empty()) return Mono{};
  Mono g = t[0].m;
  for (auto& x : t) g = mono_gcd(g, x.m);
  return g;
}

Poly Poly::derivative(int v) const {
  Poly r;
  for (auto& x : t) {
    int e = x.m.deg(v);
    if (!e) continue;
    Mono m = x.m;
    m.set(v, e - 1);
    r.t.push_back({m, x.c * e});
  }
  if (v != VY) sort_combine(r.t);
  return r;
}

Poly Poly::eval(int v, const mpz_class& a) const {
  if (!depends_on(v)) return *this;
  int d = degree(v);
  std::vector<mpz_class> pw(d + 1);
  pw[0] = 1;
  for (int i = 1; i <= d; ++i) pw[i] = pw[i - 1] * a;
  Poly r;
  r.t.reserve(t.size());
  for (auto& x : t) r.t.push_back({x.m.without(v), x.c * pw[x.m.deg(v)]});
  sort_combine(r.t);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::shift(int v, const mpz_class& a) const {
  if (a == 0 || !depends_on(v)) return *this;
  int d = degree(v);
  // binom[e][j] * a^(e-j)
  std::vector<mpz_class> apow(d + 1);
  apow[0] = 1;
  for (int i = 1; i <= d; ++i) apow[i] = apow[i - 1] * a;
  std::vector<Term> out;
  mpz_class b;
  for (auto& x : t) {
    int e = x.m.deg(v);
    Mono base = x.m.without(v);
    for (int j = 0; j <= e; ++j) {
      mpz_bin_uiui(b.get_mpz_t(), e, j);
      Mono m = base;
      m.set(v, j);
      out.push_back({m, x.c * b * apow[e - j]});
    }
  }
  sort_combine(out);
  Poly r;
  r.t = std::move(out);
  return r;
}

Poly Poly::qscale(int v, int e) const {
  if (e == 0 || !depends_on(v)) return *this;
  if (e < 0) throw std::invalid_argument("qscale: negative exponent");
  Poly r;
  r.t.reserve(t.size());
  for (auto& x : t) {
    Mono m = x.m;
    m.set(VQ, m.deg(VQ) + e * x.m.deg(v));
    r.t.push_back({m, x.c});
  }
  if (v != VY) sort_combine(r.t);
  return r;
}

Poly Poly::rename(int v, int w) const {
  Poly r;
  r.t.reserve(t.size());
  for (auto& x : t) {
    Mono m = x.m.without(v);
    m.set(w, x.m.deg(v));
    r.t.push_back({m, x.c});
  }
  sort_combine(r.t);
  return r;
}

size_t Poly::hash() const {
  size_t h = t.size();
  for (auto& x : t) {
    h = h * 1000003u ^ std::hash<uint64_t>()(x.m.hi);
    h = h * 1000003u ^ std::hash<uint64_t>()(x.m.lo);
    h = h * 1000003u ^ mpz_get_ui(x.c.get_mpz_t());
  }
  return h;
}

std::string mpz_str(const mpz_class& z) { return z.get_str(); }

std::string Poly::str(const Names& n) const {
  if (t.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& x : t) {
    mpz_class c = x.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    bool one = x.m.is_one();
    if (c != 1 || one) {
      s += c.get_str();
      if (!one) s += "*";
    }
    bool firstv = true;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = x.m.deg(v);
      if (!e) continue;
      if (!firstv) s += "*";
      firstv = false;
      s += n.v[v];
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return Poly();
  if (b.is_const()) {
    Poly q = a;
    for (auto& x : q.t) {
      if (!mpz_divisible_p(x.c.get_mpz_t(), b.t[0].c.get_mpz_t())) return std::nullopt;
      mpz_divexact(x.c.get_mpz_t(), x.c.get_mpz_t(), b.t[0].c.get_mpz_t());
    }
    return q;
  }
  if (b.is_monomial()) {
    Poly q;
    q.t.reserve(a.t.size());
    for (auto& x : a.t) {
      if (!b.t[0].m.divides(x.m)) return std::nullopt;
      if (!mpz_divisible_p(x.c.get_mpz_t(), b.t[0].c.get_mpz_t())) return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), x.c.get_mpz_t(), b.t[0].c.get_mpz_t());
      q.t.push_back({x.m / b.t[0].m, c});
    }
    return q;
  }
  // Quick degree rejections.
  Mono da = a.max_degrees(), db = b.max_degrees();
  for (int v = 0; v < kMaxVars; ++v)
    if (db.deg(v) > da.deg(v)) return std::nullopt;
  // Heap-based division: the heap holds the next product q_j * b_i of every
  // quotient term, so the current remainder term is found without
  // materializing intermediate remainders.
  struct Entry {
    Mono m;
    uint32_t j, i;
  };
  auto cmp = [](const Entry& x, const Entry& y) { return x.m < y.m; };
  std::vector<Entry> heap;
  std::vector<Term> qt;
  const Term& lb = b.t[0];
  size_t ai = 0;
  mpz_class c;
  while (true) {
    bool have = false;
    Mono M;
    if (ai < a.t.size()) {
      M = a.t[ai].m;
      have = true;
    }
    if (!heap.empty() && (!have || heap.front().m > M)) {
      M = heap.front().m;
      have = true;
    }
    if (!have) break;
    c = 0;
    if (ai < a.t.size() && a.t[ai].m == M) c = a.t[ai++].c;
    while (!heap.empty() && heap.front().m == M) {
      std::pop_heap(heap.begin(), heap.end(), cmp);
      Entry e = heap.back();
      heap.pop_back();
      mpz_submul(c.get_mpz_t(), qt[e.j].c.get_mpz_t(), b.t[e.i].c.get_mpz_t());
      if (e.i + 1 < b.t.size()) {
        heap.push_back({qt[e.j].m * b.t[e.i + 1].m, e.j, e.i + 1});
        std::push_heap(heap.begin(), heap.end(), cmp);
      }
    }
    if (c == 0) continue;
    if (!lb.m.divides(M)) return std::nullopt;
    if (!mpz_divisible_p(c.get_mpz_t(), lb.c.get_mpz_t())) return std::nullopt;
    Term nt;
    nt.m = M / lb.m;
    mpz_divexact(nt.c.get_mpz_t(), c.get_mpz_t(), lb.c.get_mpz_t());
    qt.push_back(std::move(nt));
    if (b.t.size() > 1) {
      heap.push_back({qt.back().m * b.t[1].m, uint32_t(qt.size() - 1), 1});
      std::push_heap(heap.begin(), heap.end(), cmp);
    }
  }
  Poly q;
  q.t = std::move(qt);
  return q;
}

Poly div_exact(const Poly& a, const Poly& b) {
  auto q = exact_div(a, b);
  if (!q) throw std::logic_error("inexact polynomial division");
  return *q;
}

bool divides(const Poly& b, const Poly& a) { return exact_div(a, b).has_value(); }

void pdivrem(const Poly& a, const Poly& b, int v, Poly& q, Poly& r, int& k) {
  int db = b.degree(v);
  if (db < 0) throw std::domain_error("pseudo-division by zero");
  Poly lb = b.lead_coeff(v);
  int da = a.degree(v);
  q = Poly();
  r = a;
  k = std::max(da - db + 1, 0);
  int used = 0;
  while (!r.is_zero() && r.degree(v) >= db) {
    int dr = r.degree(v);
    Poly lr = r.lead_coeff(v);
    Poly mterm = lr * Poly::var(v, dr - db);
    q = q * lb + mterm;
    r = r * lb - mterm * b;
    ++used;
  }
  if (used < k) {
    Poly f = lb.pow(k - used);
    q *= f;
    r *= f;
  }
}

Poly prem(const Poly& a, const Poly& b, int v) {
  Poly q, r;
  int k;
  pdivrem(a, b, v, q, r, k);
  return r;
}

Poly normalize_int(const Poly& a) {
  if (a.is_zero()) return a;
  mpz_class c = a.content();
  if (a.lc() < 0) c = -c;
  return c == 1 ? a : a.div_scalar(c);
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly g = gcd(a, b);
  Poly r = div_exact(a, g) * b;
  return r.sign() < 0 ? -r : r;
}

Poly content(const Poly& a, int v) {
  auto cs = a.coeffs(v);
  std::sort(cs.begin(), cs.end(), [](const Poly& x, const Poly& y) { return x.size() < y.size(); });
  Poly g;
  for (auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? (c.sign() < 0 ? -c : c) : gcd(g, c);
    if (g.is_const()) {
      return Poly(a.content());
    }
  }
  return g;
}

Poly primpart(const Poly& a, int v) {
  if (a.is_zero()) return a;
  Poly c = content(a, v);
  Poly r = div_exact(a, c);
  return r.sign() < 0 ? -r : r;
}

}  // namespace ctsum
