#include "ctsum/reduction.hpp"

#include <stdexcept>

namespace ctsum {

namespace {

bool is_proper(const RatFun& f) {
  return f.is_zero() || f.num.degree(VY) < f.den.degree(VY);
}

RatFun coeff_at(const Poly& p, int i) { return RatFun(p.coeff(VY, i)); }

RatFun q_power(int m) {
  return m >= 0 ? RatFun(Poly::var(VQ, m)) : RatFun(Poly(1), Poly::var(VQ, -m));
}

// Exponent k >= 0 with r = q^k, or -1.
int q_exponent(const RatFun& r) {
  if (!r.den.is_one() || !r.num.is_monomial() || r.num.lc() != 1) return -1;
  const Mono& m = r.num.lm();
  if (m != Mono::var(VQ, m.deg(VQ))) return -1;
  return m.deg(VQ);
}

void axpy(YPoly& a, const RatFun& c, const YPoly& b) {
  if (a.c.size() < b.c.size()) a.c.resize(b.c.size());
  for (size_t i = 0; i < b.c.size(); ++i)
    if (!b.c[i].is_zero()) a.c[i] -= c * b.c[i];
  a.trim();
}

// One piece c/sigma^l(d)^k reduced to l = 0 by the local recursion.
void local_reduction(RatFun f, const Poly& d, int k, int l, const RatFun& K, ShiftCase sc,
                     std::vector<RatFun>& gs, std::vector<RatFun>& hs,
                     std::vector<RatFun>& bs) {
  RatFun u(K.num), v(K.den);
  RatFun D = RatFun(sigma_poly(d, VY, l, sc)).pow(k);
  while (l != 0 && !f.is_zero()) {
    RatFun c = f * D;
    if (l > 0) {
      auto [s, t] = solve_bezout(u, D, v * c);
      bs.push_back(t);
      RatFun g0 = sigma_y(s / D, -1, sc);
      gs.push_back(g0);
      f = g0;
      D = sigma_y(D, -1, sc);
      --l;
    } else {
      RatFun Ds = sigma_y(D, 1, sc);
      auto [s, t] = solve_bezout(v, Ds, u * sigma_y(c, 1, sc));
      bs.push_back(t);
      gs.push_back(-f);
      f = s / Ds;
      D = Ds;
      ++l;
    }
  }
  if (!f.is_zero()) hs.push_back(f);
}

}  // namespace

NormalReduction local_normal_reduction(const RatFun& f, const Poly& d, int k, int l,
                                       const RatFun& K, ShiftCase sc) {
  std::vector<RatFun> gs, hs, bs;
  if (!f.is_zero()) local_reduction(f, d, k, l, K, sc, gs, hs, bs);
  return {sum(gs), sum(hs), sum(bs)};
}

RatFun delta_K(const RatFun& g, const RatFun& K, ShiftCase sc) {
  return K * sigma_y(g, 1, sc) - g;
}

RatFun phi_K(const RatFun& p, const RatFun& K, ShiftCase sc) {
  return RatFun(K.num) * sigma_y(p, 1, sc) - RatFun(K.den) * p;
}

// --- normal reduction -------------------------------------------------------

NormalReduction normal_reduction(const RatFun& f, const RatFun& K, ShiftCase sc) {
  if (K.is_zero()) throw std::invalid_argument("normal reduction: zero kernel");
  if (f.is_zero()) return {RatFun(), RatFun(), RatFun()};
  if (!is_proper(f)) throw std::invalid_argument("normal reduction: input is not proper");
  if (sc == ShiftCase::Q && f.den.min_degree(VY) > 0)
    throw std::invalid_argument("normal reduction: denominator has sigma-special factors");
  if (!is_sigma_reduced(K, sc)) throw std::invalid_argument("normal reduction: kernel is not sigma-reduced");

  SigmaFactorization sf = strong_sigma_factorization(RatFun(f.den), K, sc);
  struct Slot {
    Poly d;
    int k, l;
  };
  std::vector<Slot> slots;
  std::vector<std::pair<Poly, int>> factors;
  for (auto& [base, alpha] : sf.parts) {
    Poly d = ypp(base.num);
    for (auto& [l, k] : alpha.terms) {
      slots.push_back({d, k, l});
      factors.push_back({ypp(sigma_poly(d, VY, l, sc)), k});
    }
  }
  std::vector<RatFun> pieces = partial_fractions(f, factors);
  std::vector<RatFun> gs, hs, bs;
  for (size_t i = 0; i < pieces.size(); ++i)
    if (!pieces[i].is_zero())
      local_reduction(pieces[i], slots[i].d, slots[i].k, slots[i].l, K, sc, gs, hs, bs);
  return {sum(gs), sum(hs), sum(bs)};
}

// --- special reduction ------------------------------------------------------

SpecialReduction special_reduction(const RatFun& f, const RatFun& K, ShiftCase sc) {
  if (sc != ShiftCase::Q) throw std::invalid_argument("special reduction requires the q-case");
  if (K.is_zero()) throw std::invalid_argument("special reduction: zero kernel");
  if (f.is_zero()) return {RatFun(), RatFun()};
  if (!is_proper(f)) throw std::invalid_argument("special reduction: input is not proper");
  if (f.den.degree(VY) != f.den.min_degree(VY))
    throw std::invalid_argument("special reduction: denominator is not sigma-special");
  if (!is_sigma_standard(K, sc)) throw std::invalid_argument("special reduction: kernel is not sigma-standard");
  RatFun u0 = coeff_at(K.num, 0), v0 = coeff_at(K.den, 0);
  RatFun b = RatFun(K.den) * f;
  std::vector<RatFun> gs;
  while (!b.is_zero()) {
    LaurentPoly L = LaurentPoly::from(b);
    int m = L.tdeg();
    if (m >= 0) break;
    RatFun g0 = L.terms.at(m) / (u0 * q_power(m) - v0) / RatFun(Poly::var(VY, -m));
    gs.push_back(g0);
    b -= phi_K(g0, K, sc);
  }
  return {sum(gs), b};
}

// --- echelon data -----------------------------------------------------------

std::string case_tag_name(CaseTag t) {
  switch (t) {
    case CaseTag::C1_1: return "1.1";
    case CaseTag::C1_2: return "1.2";
    case CaseTag::C1_3: return "1.3";
    case CaseTag::C1_4: return "1.4";
    case CaseTag::C2_1: return "2.1";
    case CaseTag::C2_2: return "2.2";
    case CaseTag::C2_3: return "2.3";
  }
  return "?";
}

int complement_dimension(const RatFun& K, ShiftCase sc) {
  const Poly &u = K.num, &v = K.den;
  int du = u.degree(VY), dv = v.degree(VY);
  int d = std::max(du, dv);
  if (sc == ShiftCase::Shift) {
    int duv = (u - v).degree(VY);
    return d - ((0 <= duv && duv <= du - 1) ? 1 : 0);
  }
  // K is a nonpositive power of q.
  bool qpow = K.num.is_one() && q_exponent(RatFun(K.den)) >= 0;
  return d + (qpow ? 1 : 0);
}

EchelonData echelon_data(const RatFun& K, ShiftCase sc) {
  PolynomialReducer pr(K, sc);
  return pr.echelon();
}

PolynomialReducer::PolynomialReducer(const RatFun& K, ShiftCase sc) : K_(K), sc_(sc) {
  if (K.is_zero()) throw std::invalid_argument("polynomial reduction: zero kernel");
  if (!is_sigma_standard(K, sc)) throw std::invalid_argument("polynomial reduction: kernel is not sigma-standard");
  ed_.kernel = K;
  const Poly &u = K.num, &v = K.den;
  d_ = std::max(u.degree(VY), v.degree(VY));
  RatFun ud = coeff_at(u, d_), vd = coeff_at(v, d_);
  int k = -1;
  if (sc == ShiftCase::Shift) {
    if (ud != vd) {
      ed_.case_tag = CaseTag::C1_1;
      offset_ = d_;
    } else if (d_ == 0) {
      ed_.case_tag = CaseTag::C1_2;
      offset_ = -1;
    } else {
      offset_ = d_ - 1;
      RatFun c = (coeff_at(v, d_ - 1) - coeff_at(u, d_ - 1)) / ud;
      ed_.case_tag = CaseTag::C1_3;
      if (c.is_const()) {
        mpq_class cv = c.const_value();
        if (cv.get_den() == 1 && cv >= 0 && cv.get_num().fits_sint_p()) {
          k = int(cv.get_num().get_si());
          ed_.case_tag = CaseTag::C1_4;
        }
      }
    }
  } else {
    if (!ud.is_zero()) k = q_exponent(vd / ud);
    offset_ = d_;
    ed_.case_tag = k < 0 ? CaseTag::C2_1 : d_ == 0 ? CaseTag::C2_2 : CaseTag::C2_3;
  }
  std::set<int>& cd = ed_.complement_degrees;
  switch (ed_.case_tag) {
    case CaseTag::C1_2:
      break;
    case CaseTag::C2_2:
      ed_.exceptional_index = k;
      cd.insert(k);
      break;
    case CaseTag::C1_4:
    case CaseTag::C2_3: {
      ed_.exceptional_index = k;
      YPoly w = phi_mono(k);
      YPoly pre;
      pre.c.resize(size_t(k) + 1);
      pre.c[size_t(k)] = RatFun(1);
      for (int j = k - 1; j >= 0; --j) {
        YPoly pj = phi_mono(j);
        int dj = j + offset_;
        RatFun c = w.at(dj);
        if (c.is_zero()) continue;
        RatFun f = c / pj.at(dj);
        axpy(w, f, pj);
        pre.c[size_t(j)] -= f;
      }
      pre.trim();
      if (w.is_zero()) throw std::logic_error("echelon data: exceptional element vanished");
      int dr = w.deg();
      ed_.exceptional_element = w.to_rf();
      RatFun lc = w.c.back();
      for (auto& x : w.c) x /= lc;
      for (auto& x : pre.c) x /= lc;
      cache_[dr] = {pre, w};
      for (int i = 0; i < offset_; ++i)
        if (i != dr) cd.insert(i);
      cd.insert(k + offset_);
      break;
    }
    default:
      for (int i = 0; i < offset_; ++i) cd.insert(i);
  }
  ed_.dimension = int(cd.size());
}

YPoly PolynomialReducer::phi_mono(int i) const {
  return YPoly::from(phi_K(RatFun(Poly::var(VY, i)), K_, sc_));
}

const PolynomialReducer::Basis& PolynomialReducer::basis(int deg) {
  auto it = cache_.find(deg);
  if (it != cache_.end()) return it->second;
  int i = deg - offset_;
  if (i < 0 || ed_.complement_degrees.count(deg))
    throw std::logic_error("polynomial reduction: degree lies in the complement");
  YPoly img = phi_mono(i);
  if (img.deg() != deg) throw std::logic_error("polynomial reduction: unexpected image degree");
  RatFun lc = img.c.back();
  for (auto& x : img.c) x /= lc;
  YPoly pre;
  pre.c.resize(size_t(i) + 1);
  pre.c[size_t(i)] = RatFun(1) / lc;
  return cache_[deg] = {pre, img};
}

PolyReduction PolynomialReducer::reduce(const RatFun& b) {
  if (b.is_zero()) return {RatFun(), RatFun()};
  YPoly B = YPoly::from(b), A, P;
  for (int D = B.deg(); D >= 0; --D) {
    if (D > B.deg()) continue;
    RatFun c = B.c[size_t(D)];
    if (c.is_zero()) continue;
    if (ed_.complement_degrees.count(D)) {
      if (P.c.size() <= size_t(D)) P.c.resize(size_t(D) + 1);
      P.c[size_t(D)] = c;
      B.c[size_t(D)] = RatFun();
      B.trim();
      continue;
    }
    const Basis& bs = basis(D);
    axpy(B, c, bs.img);
    axpy(A, -c, bs.pre);
  }
  P.trim();
  return {A.to_rf(), P.to_rf()};
}

PolyReduction polynomial_reduction(const RatFun& b, const RatFun& K, ShiftCase sc) {
  PolynomialReducer pr(K, sc);
  return pr.reduce(b);
}

// --- remainders and the full reduction -------------------------------------

RatFun Remainder::value() const { return h + p / RatFun(v); }

bool is_valid_remainder(const Remainder& r, const EchelonData& ed, ShiftCase sc) {
  const RatFun& K = ed.kernel;
  if (r.v != K.den) return false;
  if (!is_proper(r.h)) return false;
  if (!r.h.is_zero() && r.h.den.depends_on(VY)) {
    if (sc == ShiftCase::Q && r.h.den.min_degree(VY) > 0) return false;
    Poly dn = ypp(r.h.den);
    if (!is_sigma_normal(dn, sc) || !strongly_coprime(dn, K, sc)) return false;
  }
  if (!r.p.is_ypoly()) return false;
  for (auto& t : r.p.num.t)
    if (!ed.complement_degrees.count(t.m.deg(VY))) return false;
  return true;
}

ReductionOutcome reduce_shell(const RatFun& S, const RatFun& K, ShiftCase sc,
                              PolynomialReducer* reducer) {
  ReductionOutcome out;
  out.kernel = K;
  out.shell = S;
  CanonicalRep cr = canonical_representation(S, sc);
  NormalReduction nr = normal_reduction(cr.normal, K, sc);
  RatFun g = nr.g, b = nr.b;
  if (!cr.special.is_zero()) {
    SpecialReduction sr = special_reduction(cr.special, K, sc);
    g += sr.g;
    b += sr.b;
  }
  std::optional<PolynomialReducer> local;
  if (!reducer) reducer = &local.emplace(K, sc);
  PolyReduction pr = reducer->reduce(RatFun(K.den) * cr.poly + b);
  out.g = pr.a + g;
  out.remainder = {nr.h, pr.p, K.den};
  out.summable = out.remainder.is_zero();
  return out;
}

ReductionOutcome hypergeom_reduction(const RatFun& quotient, ShiftCase sc) {
  if (quotient.is_zero()) throw std::invalid_argument("hypergeometric reduction: zero quotient");
  RNF rnf = rnf_standard(quotient, sc);
  return reduce_shell(rnf.shell, rnf.kernel, sc);
}

}  // namespace ctsum
