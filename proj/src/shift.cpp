#include "ctsum/shift.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <random>
#include <stdexcept>

#include "modp.hpp"

namespace ctsum {

int OpExponent::hdeg() const { return terms.empty() ? INT_MIN : terms.rbegin()->first; }
int OpExponent::tdeg() const { return terms.empty() ? INT_MAX : terms.begin()->first; }

OpExponent OpExponent::shifted(int s) const {
  OpExponent r;
  for (auto& [i, k] : terms) r.terms[i + s] = k;
  return r;
}

void OpExponent::add(int power, int k) {
  int& e = terms[power];
  e += k;
  if (e == 0) terms.erase(power);
}

RatFun op_power(const RatFun& p, const OpExponent& alpha, ShiftCase sc) {
  std::vector<RatFun> fs;
  for (auto& [i, k] : alpha.terms) fs.push_back(sigma_y(p, i, sc).pow(k));
  RatFun r(1);
  for (auto& f : fs) r *= f;
  return r;
}

RatFun apply_shift(const RatFun& f, int l, ShiftCase sc) { return sigma_y(f, l, sc); }

RatFun apply_shift(const RatFun& f, int m, int n, ShiftCase sc) {
  return sigma_y(sigma_x(f, m, sc), n, sc);
}

Poly normal_part(const Poly& p, ShiftCase sc) {
  if (p.is_zero()) throw std::invalid_argument("normal_part of zero");
  if (!p.depends_on(VY)) return Poly(1);
  if (sc == ShiftCase::Q) {
    int k = p.min_degree(VY);
    if (k > 0) return ypp(p.div_mono(Mono::var(VY, k)));
  }
  return ypp(p);
}

Splitting splitting_factorization(const RatFun& p, ShiftCase sc) {
  if (p.is_zero()) throw std::invalid_argument("splitting factorization of zero");
  if (!p.is_ypoly()) throw std::invalid_argument("splitting factorization: not a polynomial in y");
  Poly n = normal_part(p.num, sc);
  return {p / RatFun(n), n};
}

// --- dispersion -------------------------------------------------------------

namespace {

// log of the Fujiwara bound on the moduli of the complex roots; -inf if all
// roots are zero.
double log_root_bound(const std::vector<mpz_class>& c) {
  auto lg = [](const mpz_class& z) {
    long e;
    double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::fabs(d)) + double(e) * std::log(2.0);
  };
  int n = int(c.size()) - 1;
  double ln = lg(c[n]);
  double best = -INFINITY;
  for (int i = 1; i <= n; ++i) {
    const mpz_class& a = c[n - i];
    if (a == 0) continue;
    double v = lg(a) - ln;
    if (i == n) v -= std::log(2.0);
    best = std::max(best, v / i);
  }
  return best == -INFINITY ? best : best + std::log(2.0);
}

struct Specialized {
  std::vector<mpz_class> a, b;  // coefficients by y-degree
  long qval = 0;
};

std::vector<mpz_class> coeff_vector(Poly p) {
  std::vector<mpz_class> out(size_t(p.degree(VY) + 1));
  for (auto& t : p.t) out[size_t(t.m.deg(VY))] += t.c;
  return out;
}

bool specialize(const Poly& a, const Poly& b, ShiftCase sc, std::mt19937_64& rng, Specialized& s) {
  Poly A = a, B = b;
  unsigned mask = (a.var_mask() | b.var_mask()) & ~(1u << VY);
  for (int v = 0; v < kMaxVars; ++v) {
    if (!(mask & (1u << v))) continue;
    long val;
    if (v == VQ && sc == ShiftCase::Q) {
      val = long(rng() % 62) + 3;
      s.qval = val;
    } else {
      val = long(rng() % 61) - 30;
      if (val == 0) val = 31;
    }
    A = A.eval(v, mpz_class(val));
    B = B.eval(v, mpz_class(val));
  }
  if (A.degree(VY) != a.degree(VY) || B.degree(VY) != b.degree(VY)) return false;
  s.a = coeff_vector(A);
  s.b = coeff_vector(B);
  if (modp::reduce(s.a.back()) == 0 || modp::reduce(s.b.back()) == 0) return false;
  if (sc == ShiftCase::Q) {
    if (s.a[0] == 0 || s.b[0] == 0) return false;
    if (modp::reduce(s.a[0]) == 0 || modp::reduce(s.b[0]) == 0) return false;
    if (s.qval == 0) s.qval = 3;  // q absent from both inputs
  }
  return true;
}

modp::UPoly to_modp(const std::vector<mpz_class>& c) {
  modp::UPoly r;
  r.reserve(c.size());
  for (auto& z : c) r.push_back(modp::reduce(z));
  return r;
}

// Superset of the dispersion set from one specialization.
std::set<int> candidate_dispersions(const Specialized& s, ShiftCase sc) {
  std::set<int> out;
  modp::UPoly ap = to_modp(s.a), bp = to_modp(s.b);
  if (sc == ShiftCase::Shift) {
    double la = log_root_bound(s.a), lb = log_root_bound(s.b);
    double B = (la == -INFINITY ? 0 : std::exp(la)) + (lb == -INFINITY ? 0 : std::exp(lb));
    if (B > 2e6) throw std::runtime_error("dispersion: root bound too large");
    long L = long(std::ceil(B)) + 1;
    modp::UPoly sh = modp::taylor_shift(bp, modp::from_int(-L));
    for (long l = -L; l <= L; ++l) {
      if (modp::gcd_degree(ap, sh) > 0) out.insert(int(l));
      sh = modp::taylor_shift(sh, 1);
    }
  } else {
    auto rev = [](std::vector<mpz_class> c) {
      std::reverse(c.begin(), c.end());
      return c;
    };
    double la = log_root_bound(s.a), lar = log_root_bound(rev(s.a));
    double lb = log_root_bound(s.b), lbr = log_root_bound(rev(s.b));
    auto pos = [](double v) { return v == -INFINITY ? 0.0 : std::max(0.0, v); };
    double lq = std::log(double(std::labs(s.qval)));
    // alpha = Q^l beta: l log Q <= log|alpha| + log(1/|beta|), symmetric for l < 0.
    double span = std::max(pos(la) + pos(lbr), pos(lar) + pos(lb));
    long L = long(std::ceil(span / lq)) + 1;
    uint64_t Q = modp::from_int(s.qval), Qi = modp::inv(Q);
    for (long l = -L; l <= L; ++l) {
      uint64_t c = l >= 0 ? modp::pow(Q, uint64_t(l)) : modp::pow(Qi, uint64_t(-l));
      if (modp::gcd_degree(ap, modp::scale(bp, c)) > 0) out.insert(int(l));
    }
  }
  return out;
}

}  // namespace

std::set<int> dispersion_set(const Poly& a, const Poly& b, ShiftCase sc) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("dispersion of zero");
  std::set<int> out;
  if (a.degree(VY) <= 0 || b.degree(VY) <= 0) return out;
  if (sc == ShiftCase::Q && (a.min_degree(VY) > 0 || b.min_degree(VY) > 0))
    throw std::invalid_argument("dispersion: sigma-special factors present");
  std::mt19937_64 rng(0x5eed + uint64_t(a.size()) * 131 + uint64_t(b.size()));
  std::set<int> cand;
  int runs = 0;
  for (int attempt = 0; attempt < 64 && runs < 2; ++attempt) {
    Specialized s;
    if (!specialize(a, b, sc, rng, s)) continue;
    std::set<int> c = candidate_dispersions(s, sc);
    if (runs == 0) {
      cand = std::move(c);
    } else {
      std::set<int> both;
      for (int l : cand)
        if (c.count(l)) both.insert(l);
      cand = std::move(both);
    }
    ++runs;
  }
  if (runs == 0) throw std::runtime_error("dispersion: no admissible specialization");
  for (int l : cand) {
    Poly g = gcd(a, sigma_poly(b, VY, l, sc));
    if (g.degree(VY) > 0) out.insert(l);
  }
  return out;
}

bool is_sigma_normal(const Poly& p, ShiftCase sc) {
  if (p.is_zero()) return false;
  if (!p.depends_on(VY)) return true;
  if (sc == ShiftCase::Q && p.min_degree(VY) > 0) return false;
  for (int l : dispersion_set(p, p, sc))
    if (l != 0) return false;
  return true;
}

bool is_sigma_reduced(const RatFun& K, ShiftCase sc) {
  if (K.is_zero()) return false;
  if (!K.num.depends_on(VY) || !K.den.depends_on(VY)) return true;
  Poly un = normal_part(K.num, sc), vn = normal_part(K.den, sc);
  for (int l : dispersion_set(un, vn, sc))
    if (l != 0) return false;
  return true;
}

namespace {

// m > 0 with u(0)/v(0) = q^m, or 0.
int q_power_ratio(const RatFun& K) {
  Poly u0 = K.num.coeff(VY, 0), v0 = K.den.coeff(VY, 0);
  if (u0.is_zero() || v0.is_zero()) return 0;
  RatFun r(u0, v0);
  auto qmono = [](const Poly& p, int& e) {
    if (!p.is_monomial() || p.lc() != 1) return false;
    e = p.lm().deg(VQ);
    return p.lm() == Mono::var(VQ, e);
  };
  int a, b;
  if (!qmono(r.num, a) || !qmono(r.den, b)) return 0;
  return a - b > 0 ? a - b : 0;
}

}  // namespace

bool is_sigma_standard(const RatFun& K, ShiftCase sc) {
  if (!is_sigma_reduced(K, sc)) return false;
  return sc == ShiftCase::Shift || q_power_ratio(K) == 0;
}

bool strongly_coprime(const Poly& p, const RatFun& K, ShiftCase sc) {
  if (!p.depends_on(VY)) return true;
  if (sc == ShiftCase::Q && p.min_degree(VY) > 0 &&
      (K.num.min_degree(VY) > 0 || K.den.min_degree(VY) > 0))
    return false;
  Poly pn = normal_part(p, sc);
  if (!pn.depends_on(VY)) return true;
  if (K.num.depends_on(VY))
    for (int l : dispersion_set(normal_part(K.num, sc), pn, sc))
      if (l >= 0) return false;
  if (K.den.depends_on(VY))
    for (int l : dispersion_set(normal_part(K.den, sc), pn, sc))
      if (l <= 0) return false;
  return true;
}

CoprimeDecomposition sigma_coprime_decomposition(const Poly& e, const Poly& d, ShiftCase sc) {
  if (e.is_zero() || d.is_zero()) throw std::invalid_argument("coprime decomposition of zero");
  CoprimeDecomposition out;
  out.etilde = e;
  if (!e.depends_on(VY) || !d.depends_on(VY)) return out;
  Poly dn = normal_part(d, sc);
  if (!dn.depends_on(VY)) return out;
  Poly en = normal_part(e, sc);
  if (!en.depends_on(VY)) return out;
  for (int l : dispersion_set(en, dn, sc)) {
    Poly ds = sigma_poly(dn, VY, l, sc);
    std::vector<Poly> chain;
    Poly g = ygcd(out.etilde, ds);
    while (g.degree(VY) > 0) {
      out.etilde = div_exact(out.etilde, g);
      chain.push_back(g);
      g = ygcd(out.etilde, g);
    }
    for (size_t j = 0; j < chain.size(); ++j) {
      Poly h = j + 1 < chain.size() ? div_exact(chain[j], chain[j + 1]) : chain[j];
      if (h.degree(VY) <= 0) continue;
      out.parts.push_back({ypp(sigma_poly(h, VY, -l, sc)), int(j + 1), l});
    }
  }
  return out;
}

// --- strong sigma-factorization --------------------------------------------

RatFun SigmaFactorization::expand(ShiftCase sc) const {
  RatFun r = special;
  for (auto& [b, e] : parts) r *= op_power(b, e, sc);
  return r;
}

namespace {

struct Atom {
  Poly a;
  OpExponent e;
};

// Replaces atoms[i] by the two factors c and a/c when c is a proper factor.
bool split_atom(std::vector<Atom>& atoms, size_t i, const Poly& c0) {
  Poly c = ypp(c0);
  int dc = c.degree(VY), da = atoms[i].a.degree(VY);
  if (dc <= 0 || dc >= da) return false;
  Poly rest = ypp(div_exact(atoms[i].a, c));
  OpExponent e = atoms[i].e;
  atoms[i].a = c;
  atoms.push_back({rest, e});
  return true;
}

// Splits until every atom is sigma-normal.
void normalize_atoms(std::vector<Atom>& atoms, ShiftCase sc) {
  for (size_t i = 0; i < atoms.size();) {
    bool split = false;
    for (int l : dispersion_set(atoms[i].a, atoms[i].a, sc)) {
      if (l <= 0) continue;
      Poly g = gcd(atoms[i].a, sigma_poly(atoms[i].a, VY, l, sc));
      if (split_atom(atoms, i, g)) {
        split = true;
        break;
      }
    }
    if (!split) ++i;
  }
}

// Splits and merges until atoms are pairwise sigma-coprime.
void merge_atoms(std::vector<Atom>& atoms, ShiftCase sc) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < atoms.size() && !changed; ++i)
      for (size_t j = i + 1; j < atoms.size() && !changed; ++j) {
        auto ds = dispersion_set(atoms[i].a, atoms[j].a, sc);
        if (ds.empty()) continue;
        int l = *ds.begin();
        Poly g = ypp(gcd(atoms[i].a, sigma_poly(atoms[j].a, VY, l, sc)));
        int dg = g.degree(VY);
        if (dg == atoms[i].a.degree(VY) && dg == atoms[j].a.degree(VY)) {
          // atoms[j] = sigma^-l(atoms[i]) up to a unit.
          for (auto& [t, k] : atoms[j].e.terms) atoms[i].e.add(t - l, k);
          atoms.erase(atoms.begin() + long(j));
        } else {
          split_atom(atoms, i, g);
          split_atom(atoms, j, sigma_poly(g, VY, -l, sc));
        }
        changed = true;
      }
  }
  for (auto it = atoms.begin(); it != atoms.end();)
    it = it->e.is_zero() ? atoms.erase(it) : std::next(it);
}

// Splits atoms so that every shift of an atom either divides w or is coprime to it.
void uniformize(std::vector<Atom>& atoms, const Poly& w, ShiftCase sc) {
  if (!w.depends_on(VY)) return;
  for (size_t i = 0; i < atoms.size();) {
    bool split = false;
    for (int l : dispersion_set(w, atoms[i].a, sc)) {
      Poly g = gcd(w, sigma_poly(atoms[i].a, VY, l, sc));
      if (split_atom(atoms, i, sigma_poly(g, VY, -l, sc))) {
        split = true;
        break;
      }
    }
    if (!split) ++i;
  }
}

}  // namespace

SigmaFactorization strong_sigma_factorization(const RatFun& p, const RatFun& K, ShiftCase sc) {
  if (p.is_zero()) throw std::invalid_argument("strong factorization of zero");
  if (!p.is_ypoly()) throw std::invalid_argument("strong factorization: not a polynomial in y");
  if (!is_sigma_reduced(K, sc)) throw std::invalid_argument("kernel is not sigma-reduced");
  SigmaFactorization out;
  Poly n = normal_part(p.num, sc);
  std::vector<Atom> atoms;
  if (n.depends_on(VY))
    for (auto& [f, m] : squarefree_decomposition(n)) {
      Atom a{f, {}};
      a.e.add(0, m);
      atoms.push_back(std::move(a));
    }
  normalize_atoms(atoms, sc);
  merge_atoms(atoms, sc);
  Poly un = K.num.depends_on(VY) ? normal_part(K.num, sc) : Poly(1);
  Poly vn = K.den.depends_on(VY) ? normal_part(K.den, sc) : Poly(1);
  uniformize(atoms, un, sc);
  uniformize(atoms, vn, sc);
  RatFun prod(1);
  for (auto& at : atoms) {
    std::set<int> du, dv;
    if (un.depends_on(VY)) du = dispersion_set(un, at.a, sc);
    if (vn.depends_on(VY)) dv = dispersion_set(vn, at.a, sc);
    int lo = du.empty() ? INT_MIN : *du.rbegin() + 1;
    int hi = dv.empty() ? INT_MAX : *dv.begin() - 1;
    if (lo > hi) throw std::logic_error("kernel is not sigma-reduced");
    int s = std::clamp(0, lo, hi);
    RatFun base = sigma_monic(RatFun(sigma_poly(at.a, VY, s, sc)), sc);
    OpExponent e = at.e.shifted(-s);
    prod *= op_power(base, e, sc);
    out.parts.push_back({base, e});
  }
  out.special = p / prod;
  return out;
}

// --- rational normal form ---------------------------------------------------

RNF rnf_standard(const RatFun& f, ShiftCase sc) {
  if (f.is_zero()) throw std::invalid_argument("rational normal form of zero");
  RatFun K = f, S(1);
  while (true) {
    if (!K.num.depends_on(VY) || !K.den.depends_on(VY)) break;
    Poly un = normal_part(K.num, sc), vn = normal_part(K.den, sc);
    if (!un.depends_on(VY) || !vn.depends_on(VY)) break;
    auto D = dispersion_set(un, vn, sc);
    if (D.empty()) break;
    for (int l : D) {
      if (l == 0) continue;
      Poly g = ygcd(K.num, sigma_poly(K.den, VY, l, sc));
      if (g.degree(VY) <= 0) continue;
      RatFun G(g);
      if (l > 0) {
        std::vector<RatFun> ws;
        for (int j = 1; j <= l; ++j) ws.push_back(sigma_y(G, -j, sc));
        RatFun W(1);
        for (auto& w : ws) W *= w;
        K = K * sigma_y(G, -l, sc) / G;
        S *= W;
      } else {
        int m = -l;
        RatFun W(1);
        for (int j = 0; j < m; ++j) W *= sigma_y(G, j, sc);
        K = K * sigma_y(G, m, sc) / G;
        S /= W;
      }
    }
  }
  if (sc == ShiftCase::Q) {
    int m = q_power_ratio(K);
    if (m > 0) {
      K = K / RatFun(Poly::var(VQ, m));
      S *= RatFun(Poly::var(VY, m));
    }
  }
  return {K, S};
}

CanonicalRep canonical_representation(const RatFun& f, ShiftCase sc) {
  CanonicalRep out;
  if (f.is_zero()) return out;
  Poly Q, R;
  int k;
  pdivrem(f.num, f.den, VY, Q, R, k);
  Poly lk = f.den.lead_coeff(VY).pow(unsigned(k));
  out.poly = RatFun(Q, lk);
  RatFun proper(R, lk * f.den);
  if (proper.is_zero()) return out;
  const Poly& D = proper.den;
  int ky = sc == ShiftCase::Q ? D.min_degree(VY) : 0;
  if (ky == 0) {
    out.normal = proper;
    return out;
  }
  Poly Dn = D.div_mono(Mono::var(VY, ky));
  if (!Dn.depends_on(VY)) {
    out.special = proper;
    return out;
  }
  auto parts = partial_fractions(proper, {{Poly::var(VY), ky}, {ypp(Dn), 1}});
  out.special = parts[0];
  out.normal = parts[1];
  return out;
}

bool is_rational_term(const RatFun& K, ShiftCase sc) {
  if (sc == ShiftCase::Shift) return K.is_one();
  auto qmono = [](const Poly& p) {
    if (!p.is_monomial() || p.lc() != 1) return false;
    return p.lm() == Mono::var(VQ, p.lm().deg(VQ));
  };
  return qmono(K.num) && qmono(K.den);
}

}  // namespace ctsum
