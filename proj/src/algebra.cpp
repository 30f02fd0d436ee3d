#include "ctsum/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctsum {

RatFun sigma_monic(const RatFun& p, ShiftCase sc) {
  if (p.is_zero()) throw std::invalid_argument("sigma_monic of zero");
  if (!p.num.depends_on(VY)) return RatFun(1);
  Poly lead = sc == ShiftCase::Shift ? p.num.lead_coeff(VY) : p.num.tail_coeff(VY);
  return RatFun(p.num, lead);
}

void ydivrem(const RatFun& a, const RatFun& b, RatFun& q, RatFun& r) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (!a.is_ypoly() || !b.is_ypoly()) throw std::invalid_argument("ydivrem: not polynomials in y");
  Poly Q, R;
  int k;
  pdivrem(a.num, b.num, VY, Q, R, k);
  Poly lk = b.num.lead_coeff(VY).pow(unsigned(k));
  Poly den = lk * a.den;
  q = RatFun(Q * b.den, den);
  r = RatFun(R, den);
}

RatFun yrem(const RatFun& a, const RatFun& b) {
  RatFun q, r;
  ydivrem(a, b, q, r);
  return r;
}

RatFun yquo_exact(const RatFun& a, const RatFun& b) {
  RatFun q, r;
  ydivrem(a, b, q, r);
  if (!r.is_zero()) throw std::logic_error("inexact division in F[y]");
  return q;
}

ExtGcd poly_gcd_ext(const RatFun& a, const RatFun& b, ShiftCase sc) {
  if (!a.is_ypoly() || !b.is_ypoly()) throw std::invalid_argument("poly_gcd_ext: not polynomials in y");
  if (a.is_zero() && b.is_zero()) return {RatFun(), RatFun(), RatFun()};
  if (a.is_zero()) {
    RatFun g = sigma_monic(b, sc);
    return {g, RatFun(), g / b};
  }
  if (b.is_zero()) {
    RatFun g = sigma_monic(a, sc);
    return {g, g / a, RatFun()};
  }
  Poly ca = a.num.depends_on(VY) ? ycontent(a.num) : a.num;
  Poly cb = b.num.depends_on(VY) ? ycontent(b.num) : b.num;
  Poly A = div_exact(a.num, ca), B = div_exact(b.num, cb);
  // Subresultant remainder sequence with the cofactor of A carried along;
  // both are divided by the same exact factor at every step.
  if (A.degree(VY) < B.degree(VY)) {
    ExtGcd sw = poly_gcd_ext(b, a, sc);
    return {sw.g, sw.t, sw.s};
  }
  Poly r0 = A, r1 = B, s0(1), s1;
  Poly gg(1), hh(1);
  Poly g, s;
  while (true) {
    if (r1.is_zero()) {
      g = r0;
      s = s0;
      break;
    }
    if (r1.degree(VY) == 0) {
      g = r1;
      s = s1;
      break;
    }
    int delta = r0.degree(VY) - r1.degree(VY);
    Poly Q, R;
    int k;
    pdivrem(r0, r1, VY, Q, R, k);
    Poly lk = r1.lead_coeff(VY).pow(unsigned(k));
    Poly s2 = lk * s0 - Q * s1;
    Poly beta = gg * hh.pow(unsigned(delta));
    if (!beta.is_one()) {
      R = div_exact(R, beta);
      s2 = div_exact(s2, beta);
    }
    gg = r1.lead_coeff(VY);
    if (delta > 0) hh = div_exact(gg.pow(unsigned(delta)), hh.pow(unsigned(delta - 1)));
    r0 = std::move(r1);
    s0 = std::move(s1);
    r1 = std::move(R);
    s1 = std::move(s2);
  }
  if (g.degree(VY) > 0) {
    Poly c = gcd(ycontent(g), s);
    if (!c.is_one()) {
      g = div_exact(g, c);
      s = div_exact(s, c);
    }
  } else {
    Poly c = gcd(g, s);
    if (!c.is_one()) {
      g = div_exact(g, c);
      s = div_exact(s, c);
    }
  }
  Poly t = div_exact(g - s * A, B);
  // s*A + t*B = g with A = a*a.den/ca and B = b*b.den/cb.
  RatFun scale;
  RatFun grf;
  if (g.degree(VY) <= 0) {
    grf = RatFun(1);
    scale = RatFun(g);
  } else {
    RatFun gfull(g);
    grf = sigma_monic(gfull, sc);
    scale = gfull / grf;
  }
  RatFun srf = RatFun(s * a.den, ca) / scale;
  RatFun trf = RatFun(t * b.den, cb) / scale;
  return {grf, srf, trf};
}

std::pair<RatFun, RatFun> solve_bezout(const RatFun& u, const RatFun& D, const RatFun& rhs) {
  ExtGcd eg = poly_gcd_ext(u, D, ShiftCase::Shift);
  if (!eg.g.is_one()) throw std::logic_error("solve_bezout: non-coprime moduli");
  RatFun s = yrem(rhs * eg.s, D);
  RatFun t = yquo_exact(rhs - s * u, D);
  return {s, t};
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p0) {
  if (p0.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
  std::vector<std::pair<Poly, int>> out;
  if (!p0.depends_on(VY)) return out;
  Poly p = ypp(p0);
  Poly b = p.derivative(VY);
  Poly c = ygcd(p, b);
  Poly w = div_exact(p, c);
  Poly yv = div_exact(b, c);
  Poly z = yv - w.derivative(VY);
  int i = 1;
  while (w.degree(VY) > 0) {
    Poly g = z.is_zero() ? w : ygcd(w, z);
    if (g.degree(VY) > 0) out.push_back({g, i});
    w = div_exact(w, g);
    yv = div_exact(z, g);
    z = yv - w.derivative(VY);
    ++i;
  }
  return out;
}

std::vector<RatFun> partial_fractions(const RatFun& f,
                                      const std::vector<std::pair<Poly, int>>& factors) {
  std::vector<RatFun> out;
  if (factors.empty()) {
    if (!f.is_zero() && f.den.depends_on(VY)) throw std::invalid_argument("factor product mismatch");
    if (!f.is_zero()) out.push_back(f);
    return out;
  }
  std::vector<RatFun> F;
  Poly prod(1);
  for (auto& [fac, m] : factors) {
    Poly fp = fac.pow(unsigned(m));
    F.push_back(RatFun(fp));
    prod *= fp;
  }
  if (!associates(prod, f.den) && !(f.is_zero()))
    throw std::invalid_argument("factor product mismatch with denominator");
  if (!f.is_zero() && f.num.degree(VY) >= f.den.degree(VY))
    throw std::invalid_argument("partial_fractions: improper input");
  RatFun N = f * RatFun(prod);
  RatFun rest(prod);
  for (size_t i = 0; i + 1 < F.size(); ++i) {
    const RatFun& A = F[i];
    RatFun B = yquo_exact(rest, A);
    if (N.is_zero()) {
      out.push_back(RatFun());
      rest = B;
      continue;
    }
    ExtGcd eg = poly_gcd_ext(A, B, ShiftCase::Shift);
    if (!eg.g.is_one()) throw std::invalid_argument("partial_fractions: factors not coprime");
    RatFun ai = yrem(N * eg.t, A);
    out.push_back(ai / A);
    N = yquo_exact(N - B * ai, A);
    rest = B;
  }
  out.push_back(N / rest);
  return out;
}

Poly resultant(const Poly& a0, const Poly& b0, int v) {
  if (a0.is_zero() || b0.is_zero()) return Poly();
  Poly A = a0, B = b0;
  int da = A.degree(v), db = B.degree(v);
  if (da == 0) return A.pow(unsigned(db));
  if (db == 0) return B.pow(unsigned(da));
  Poly ca = content(A, v), cb = content(B, v);
  A = div_exact(A, ca);
  B = div_exact(B, cb);
  Poly g(1), h(1);
  int s = 1;
  Poly t = ca.pow(unsigned(db)) * cb.pow(unsigned(da));
  if (da < db) {
    std::swap(A, B);
    if ((da & 1) && (db & 1)) s = -1;
  }
  while (true) {
    int dA = A.degree(v), dB = B.degree(v);
    int delta = dA - dB;
    if ((dA & 1) && (dB & 1)) s = -s;
    Poly R = prem(A, B, v);
    A = B;
    if (R.is_zero()) return Poly();
    B = div_exact(R, g * h.pow(unsigned(delta)));
    g = A.lead_coeff(v);
    if (delta == 0) {
      // h unchanged
    } else {
      h = div_exact(g.pow(unsigned(delta)), h.pow(unsigned(delta - 1)));
    }
    if (B.degree(v) == 0) {
      int d = A.degree(v);
      Poly hh = div_exact(B.pow(unsigned(d)), h.pow(unsigned(d - 1)));
      Poly r = t * hh;
      return s < 0 ? -r : r;
    }
  }
}

namespace {

struct Echelon {
  std::vector<std::vector<Poly>> P;
  std::vector<size_t> pivcols;
};

Echelon bareiss(const Matrix& M, size_t ncols) {
  Echelon E;
  for (auto& row : M) {
    Poly L(1);
    for (size_t j = 0; j < ncols; ++j)
      if (!row[j].is_zero()) L = lcm(L, row[j].den);
    std::vector<Poly> pr(ncols);
    bool nz = false;
    for (size_t j = 0; j < ncols; ++j)
      if (!row[j].is_zero()) {
        pr[j] = row[j].num * div_exact(L, row[j].den);
        nz = true;
      }
    if (nz) E.P.push_back(std::move(pr));
  }
  auto& P = E.P;
  Poly prev(1);
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < P.size(); ++c) {
    size_t best = P.size();
    for (size_t i = r; i < P.size(); ++i)
      if (!P[i][c].is_zero() && (best == P.size() || P[i][c].size() < P[best][c].size())) best = i;
    if (best == P.size()) continue;
    std::swap(P[r], P[best]);
    for (size_t i = r + 1; i < P.size(); ++i) {
      for (size_t j = c + 1; j < ncols; ++j) {
        Poly val = P[r][c] * P[i][j] - P[i][c] * P[r][j];
        P[i][j] = prev.is_one() ? val : div_exact(val, prev);
      }
      P[i][c] = Poly();
    }
    prev = P[r][c];
    E.pivcols.push_back(c);
    ++r;
  }
  P.resize(r);
  return E;
}

}  // namespace

std::vector<std::vector<RatFun>> solve_nullspace(const Matrix& M, size_t ncols) {
  Echelon E = bareiss(M, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (auto c : E.pivcols) is_piv[c] = true;
  std::vector<std::vector<RatFun>> basis;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<RatFun> x(ncols);
    x[f] = RatFun(1);
    for (size_t k = E.pivcols.size(); k-- > 0;) {
      size_t pc = E.pivcols[k];
      std::vector<RatFun> parts;
      for (size_t j = pc + 1; j < ncols; ++j)
        if (!E.P[k][j].is_zero() && !x[j].is_zero()) parts.push_back(RatFun(E.P[k][j]) * x[j]);
      RatFun s = sum(std::move(parts));
      x[pc] = s.is_zero() ? RatFun() : -s / RatFun(E.P[k][pc]);
    }
    size_t last = ncols;
    for (size_t j = ncols; j-- > 0;)
      if (!x[j].is_zero()) {
        last = j;
        break;
      }
    RatFun lv = x[last];
    for (auto& e : x) e = e / lv;
    basis.push_back(std::move(x));
  }
  return basis;
}

size_t matrix_rank(const Matrix& M, size_t ncols) { return bareiss(M, ncols).pivcols.size(); }

}  // namespace ctsum
