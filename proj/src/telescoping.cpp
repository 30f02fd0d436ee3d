#include "ctsum/telescoping.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ctsum {

bool check_compatibility(const BivariateTerm& T) {
  if (T.fx.is_zero() || T.gy.is_zero()) throw std::invalid_argument("zero quotient");
  return sigma_y(T.fx, 1, T.sc) * T.gy == sigma_x(T.gy, 1, T.sc) * T.fx;
}

// --- integer-linearity ------------------------------------------------------

namespace {

using Dir = std::pair<int, int>;

Dir normalize_dir(long l, long m) {
  long g = std::gcd(std::labs(l), std::labs(m));
  l /= g;
  m /= g;
  if (l < 0 || (l == 0 && m < 0)) {
    l = -l;
    m = -m;
  }
  return {int(l), int(m)};
}

// sigma_x^mu sigma_y^-lambda, the shift fixing P(lambda x + mu y).
Poly along(const Poly& f, Dir d, ShiftCase sc) {
  return sigma_poly(sigma_poly(f, VX, d.second, sc), VY, -d.first, sc);
}

// Equal up to a factor free of x and y.
bool xy_associates(const Poly& a, const Poly& b) {
  RatFun r(a, b);
  return !r.depends_on(VX) && !r.depends_on(VY);
}

bool invariant(const Poly& f, Dir d, ShiftCase sc) { return xy_associates(along(f, d, sc), f); }

Poly strip_xy_monomial(const Poly& f) {
  Mono m = f.mono_content();
  Mono xy;
  xy.set(VX, m.deg(VX));
  xy.set(VY, m.deg(VY));
  return f.div_mono(xy);
}

bool xy_const(const Poly& f) { return !f.depends_on(VX) && !f.depends_on(VY); }

// Direction of a squarefree f all of whose factors share one direction, if any.
std::optional<Dir> pure_direction(const Poly& f, ShiftCase sc) {
  if (sc == ShiftCase::Shift) {
    Poly fx = f.derivative(VX), fy = f.derivative(VY);
    if (fx.is_zero()) return Dir{0, 1};
    if (fy.is_zero()) return Dir{1, 0};
    RatFun r(fx, fy);
    if (!r.is_const()) return std::nullopt;
    mpq_class c = r.const_value();
    if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p()) return std::nullopt;
    Dir d = normalize_dir(c.get_num().get_si(), c.get_den().get_si());
    if (!invariant(f, d, sc)) return std::nullopt;
    return d;
  }
  std::set<std::pair<int, int>> pts;
  for (auto& t : f.t) pts.insert({t.m.deg(VX), t.m.deg(VY)});
  if (pts.size() < 2) return std::nullopt;
  auto p0 = *pts.begin();
  long g = 0, l0 = 0, m0 = 0;
  for (auto& p : pts) {
    long dl = p.first - p0.first, dm = p.second - p0.second;
    if (dl == 0 && dm == 0) continue;
    if (l0 == 0 && m0 == 0) {
      g = std::gcd(std::labs(dl), std::labs(dm));
      l0 = dl / g;
      m0 = dm / g;
    } else if (dl * m0 != dm * l0) {
      return std::nullopt;
    }
  }
  Dir d = normalize_dir(l0, m0);
  if (!invariant(f, d, sc)) return std::nullopt;
  return d;
}

// Product of the factors of f invariant under the shift along d.
Poly invariant_part(const Poly& f, Dir d, ShiftCase sc) {
  Poly g = f;
  while (true) {
    if (xy_const(g)) return Poly(1);
    Poly h = gcd(g, along(g, d, sc));
    if (xy_associates(h, g)) return g;
    g = h;
  }
}

// Divisors of |n| (n != 0); false if n is too large to factor by trial division.
bool divisors(mpz_class n, std::vector<mpz_class>& out) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> pf;
  for (unsigned long p = 2; p < 1000000 && mpz_class(p) * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) pf.push_back({mpz_class(p), e});
  }
  if (n > 1) {
    if (n >= mpz_class(1000000) * 1000000) return false;
    pf.push_back({n, 1});
  }
  out = {mpz_class(1)};
  for (auto& [p, e] : pf) {
    size_t sz = out.size();
    mpz_class pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= p;
      for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
    }
    if (out.size() > 200000) return false;
  }
  return true;
}

// Rational roots a/b of an integer polynomial in x; false if undecidable here.
bool rational_roots(const Poly& G, std::vector<std::pair<mpz_class, mpz_class>>& roots) {
  Poly g = G;
  int z = g.min_degree(VX);
  if (z > 0) {
    roots.push_back({0, 1});
    g = g.div_mono(Mono::var(VX, z));
  }
  if (g.degree(VX) <= 0) return true;
  std::vector<mpz_class> da, db;
  if (!divisors(g.coeff(VX, 0).const_value(), da) || !divisors(g.lead_coeff(VX).const_value(), db))
    return false;
  if (da.size() * db.size() > 400000) return false;
  for (auto& b : db)
    for (auto& a : da)
      for (int s : {1, -1}) {
        mpz_class num = s * a;
        if (gcd(num, b) != 1) continue;
        // b^n g(a/b) == 0
        Poly lin = Poly::monomial(b, Mono::var(VX)) - Poly(num);
        if (divides(lin, g)) roots.push_back({num, b});
      }
  return true;
}

// Candidate directions for integer-linear factors of f: linear factors of
// the top homogeneous part (shift case) or edges of the Newton polygon (q-case).
bool candidate_directions(const Poly& f, ShiftCase sc, std::set<Dir>& out) {
  if (sc == ShiftCase::Shift) {
    int n = 0;
    for (auto& t : f.t) n = std::max(n, t.m.deg(VX) + t.m.deg(VY));
    Poly h;
    for (auto& t : f.t)
      if (t.m.deg(VX) + t.m.deg(VY) == n) h += Poly::monomial(t.c, t.m);
    if (h.degree(VX) < n) out.insert({0, 1});
    // h(t, 1) split by the remaining monomials; common rational roots in t = x/y
    std::map<Mono, Poly> slices;
    for (auto& t : h.t) {
      Mono rest = t.m.without(VX).without(VY);
      slices[rest] += Poly::monomial(t.c, Mono::var(VX, t.m.deg(VX)));
    }
    Poly G;
    for (auto& [m, s] : slices) G = G.is_zero() ? s : gcd(G, s);
    if (G.degree(VX) <= 0) return true;
    std::vector<std::pair<mpz_class, mpz_class>> roots;
    if (!rational_roots(G, roots)) return false;
    for (auto& [a, b] : roots) {
      // factor b x - a y
      if (!b.fits_slong_p() || !a.fits_slong_p()) return false;
      out.insert(normalize_dir(b.get_si(), -a.get_si()));
    }
    return true;
  }
  std::vector<std::pair<long, long>> pts;
  for (auto& t : f.t) pts.push_back({t.m.deg(VX), t.m.deg(VY)});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return true;
  auto cross = [](std::pair<long, long> o, std::pair<long, long> a, std::pair<long, long> b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<long, long>> hull(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  for (size_t i = 0; i < hull.size(); ++i) {
    auto a = hull[i], b = hull[(i + 1) % hull.size()];
    out.insert(normalize_dir(b.first - a.first, b.second - a.second));
  }
  return true;
}

}  // namespace

IntegerLinearResult integer_linear_test(const Poly& p, ShiftCase sc) {
  if (p.is_zero()) throw std::invalid_argument("integer-linearity of zero");
  IntegerLinearResult res;
  std::set<Dir> dirs;
  bool undetermined = false;
  Poly base = p;
  if (sc == ShiftCase::Q) base = strip_xy_monomial(base);
  // factors free of y are integer-linear along (1, 0)
  Poly yc = ycontent(base);
  if (yc.depends_on(VX)) {
    Poly ycq = sc == ShiftCase::Q ? strip_xy_monomial(yc) : yc;
    if (ycq.depends_on(VX)) dirs.insert({1, 0});
  }
  if (base.depends_on(VY)) {
    for (auto& [f0, mult] : squarefree_decomposition(base)) {
      (void)mult;
      Poly f = sc == ShiftCase::Q ? strip_xy_monomial(f0) : f0;
      if (xy_const(f)) continue;
      if (auto d = pure_direction(f, sc)) {
        dirs.insert(*d);
        continue;
      }
      std::set<Dir> cands;
      if (!candidate_directions(f, sc, cands)) {
        undetermined = true;
        continue;
      }
      Poly rest = f;
      for (const Dir& d : cands) {
        if (xy_const(rest)) break;
        Poly g = invariant_part(rest, d, sc);
        if (xy_const(g)) continue;
        dirs.insert(d);
        rest = div_exact(rest, g);
      }
      if (!xy_const(rest)) {
        res.status = LinearStatus::No;
        return res;
      }
    }
  }
  res.status = undetermined ? LinearStatus::Undetermined : LinearStatus::Yes;
  res.directions.assign(dirs.begin(), dirs.end());
  return res;
}

// --- certificates and verification -----------------------------------------

RatFun Certificate::normalized() const {
  if (g) return *g;
  std::vector<RatFun> parts;
  for (auto& [c, gj] : tagged) parts.push_back(c * gj);
  return sum(std::move(parts));
}

bool verify_telescoper_relative(const BivariateTerm& T, const Telescoper& L, const RatFun& c) {
  std::vector<RatFun> parts;
  RatFun P(1);
  for (size_t i = 0; i < L.coeffs.size(); ++i) {
    if (i > 0) P *= sigma_x(T.fx, int(i) - 1, T.sc);
    if (!L.coeffs[i].is_zero()) parts.push_back(L.coeffs[i] * P);
  }
  RatFun lhs = sum(std::move(parts));
  RatFun rhs = sigma_y(c, 1, T.sc) * T.gy - c;
  return lhs == rhs;
}

bool verify_telescoper(const BivariateTerm& T, const Telescoper& L, const Certificate& G) {
  return verify_telescoper_relative(T, L, G.relative());
}

// --- driver -----------------------------------------------------------------

namespace {

// Rows of the linear system sum_j l_j r_j = 0.
Matrix remainder_system(const std::vector<Remainder>& rs) {
  Poly D(1);
  for (auto& r : rs)
    if (!r.h.is_zero()) D = lcm(D, r.h.den);
  std::map<int, std::vector<RatFun>> hrows, prows;
  size_t n = rs.size();
  for (size_t j = 0; j < n; ++j) {
    if (!rs[j].h.is_zero()) {
      YPoly hn = YPoly::from(rs[j].h * RatFun(D));
      for (int e = 0; e <= hn.deg(); ++e) {
        auto& row = hrows[e];
        row.resize(n);
        row[j] = hn.c[size_t(e)];
      }
    }
    if (!rs[j].p.is_zero()) {
      YPoly pp = YPoly::from(rs[j].p);
      for (int e = 0; e <= pp.deg(); ++e) {
        auto& row = prows[e];
        row.resize(n);
        row[j] = pp.c[size_t(e)];
      }
    }
  }
  Matrix M;
  for (auto* rows : {&hrows, &prows})
    for (auto& [e, row] : *rows) {
      bool nz = false;
      for (auto& c : row) nz = nz || !c.is_zero();
      if (nz) M.push_back(row);
    }
  return M;
}

// Clears denominators and common content; last coefficient with positive
// leading coefficient.
std::vector<RatFun> clear_content(const std::vector<RatFun>& cs) {
  Poly den(1);
  for (auto& c : cs)
    if (!c.is_zero()) den = lcm(den, c.den);
  std::vector<Poly> nums;
  Poly g;
  for (auto& c : cs) {
    Poly n = c.is_zero() ? Poly() : div_exact(c.num * den, c.den);
    nums.push_back(n);
    if (!n.is_zero()) g = g.is_zero() ? n : gcd(g, n);
  }
  Poly last;
  for (auto& n : nums)
    if (!n.is_zero()) last = n;
  if (last.sign() * g.sign() < 0) g = -g;
  std::vector<RatFun> out;
  for (auto& n : nums) out.push_back(n.is_zero() ? RatFun() : RatFun(div_exact(n, g)));
  return out;
}

}  // namespace

TelescopingResult hypergeom_telescoping(const BivariateTerm& T, const TelescopingOptions& opt) {
  if (opt.max_order < 0) throw std::invalid_argument("max_order must be nonnegative");
  if (!check_compatibility(T)) throw IncompatibleTerm("sigma_x and sigma_y quotients are not compatible");
  const ShiftCase sc = T.sc;
  TelescopingResult res;
  RNF rnf = rnf_standard(T.gy, sc);
  const RatFun &K = rnf.kernel, &S = rnf.shell;
  res.kernel = K;
  res.shell = S;
  RatFun N = T.fx * S / sigma_x(S, 1, sc);
  PolynomialReducer red(K, sc);

  ReductionOutcome o0 = reduce_shell(S, K, sc, &red);
  res.remainder0 = o0.remainder;
  if (opt.keep_trace) res.trace.push_back({o0.g, o0.remainder});
  auto certificate = [&](const std::vector<RatFun>& ls, const std::vector<RatFun>& gs) {
    Certificate c;
    c.kernel = K;
    c.shell = S;
    c.N = N;
    for (size_t j = 0; j < ls.size(); ++j)
      if (!ls[j].is_zero() && !gs[j].is_zero()) c.tagged.push_back({ls[j], gs[j]});
    if (opt.normalize_certificate) {
      c.g = c.normalized();
      c.tagged.clear();
    }
    return c;
  };
  if (o0.summable) {
    res.status = TelescopingStatus::Found;
    res.telescoper.coeffs = {RatFun(1)};
    if (opt.want_certificate) res.certificate = certificate({RatFun(1)}, {o0.g});
    return res;
  }
  res.empty_orders.push_back(0);
  if (!opt.skip_existence_test) {
    res.existence = integer_linear_test(significant_denominator(o0.remainder), sc);
    if (res.existence.status == LinearStatus::No) {
      res.status = TelescopingStatus::NoTelescoper;
      return res;
    }
  }

  std::vector<Remainder> rs{o0.remainder};
  std::vector<RatFun> gs{o0.g};
  Poly dacc = significant_denominator(o0.remainder);
  for (int i = 1; i <= opt.max_order; ++i) {
    RatFun shell_i = sigma_x(rs.back().value(), 1, sc) * N;
    ReductionOutcome oi = reduce_shell(shell_i, K, sc, &red);
    Linearization lin = linearize_against(dacc, oi.remainder, K, sc, &red);
    rs.push_back(lin.t);
    if (opt.want_certificate || opt.keep_trace) gs.push_back(sigma_x(gs.back(), 1, sc) * N + oi.g + lin.g);
    if (opt.keep_trace) res.trace.push_back({gs.back(), lin.t});
    Poly sd = significant_denominator(lin.t);
    if (sd.depends_on(VY)) dacc = dacc.depends_on(VY) ? ypp(lcm(dacc, sd)) : sd;

    Matrix M = remainder_system(rs);
    auto ns = M.empty() ? std::vector<std::vector<RatFun>>{} : solve_nullspace(M, rs.size());
    if (M.empty()) {
      std::vector<RatFun> e(rs.size());
      e.back() = RatFun(1);
      ns.push_back(e);
    }
    if (ns.empty()) {
      res.empty_orders.push_back(i);
      continue;
    }
    std::vector<RatFun> ls = clear_content(ns.front());
    res.status = TelescopingStatus::Found;
    res.telescoper.coeffs = ls;
    if (opt.want_certificate) res.certificate = certificate(ls, gs);
    return res;
  }
  res.status = TelescopingStatus::OrderBoundExceeded;
  return res;
}

}  // namespace ctsum
