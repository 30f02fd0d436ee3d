#include <random>

#include "ctsum/shift.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ctsum;

namespace {
const Poly y = Poly::var(VY), x = Poly::var(VX), q = Poly::var(VQ);
const ShiftCase SH = ShiftCase::Shift, QC = ShiftCase::Q;

// Independent oracle: direct gcd scan over |l| <= range.
std::set<int> scan_dispersion(const Poly& a, const Poly& b, ShiftCase sc, int range) {
  std::set<int> out;
  for (int l = -range; l <= range; ++l)
    if (gcd(a, sigma_poly(b, VY, l, sc)).degree(VY) > 0) out.insert(l);
  return out;
}

// Random factor of y-degree 1 or 2 with nonzero constant term in y.
Poly random_factor(std::mt19937_64& rng, ShiftCase sc) {
  while (true) {
    int dy = 1 + int(rng() % 2);
    Poly p = Poly::var(VY, dy) * testutil::random_poly(rng, 0, 1, sc == QC ? 1 : 0, 0, 3) +
             testutil::random_poly(rng, dy - 1, 1, sc == QC ? 2 : 0, 1, 4);
    if (p.degree(VY) != dy) continue;
    if (sc == QC && p.coeff(VY, 0).is_zero()) continue;
    if (!is_sigma_normal(p, sc)) continue;
    return ypp(p);
  }
}
}  // namespace

TEST_CASE("apply_shift") {
  CHECK(apply_shift(RatFun(y * y), 1, SH) == RatFun((y + 1) * (y + 1)));
  CHECK(apply_shift(RatFun(q * y - 1), 1, QC) == RatFun(q * q * y - 1));
  CHECK(apply_shift(RatFun(x * y), 1, 2, SH) == RatFun((x + 1) * (y + 2)));
  CHECK(apply_shift(RatFun(x + y), 1, 1, QC) == RatFun(q * x + q * y));
  std::mt19937_64 rng(21);
  for (int it = 0; it < 30; ++it) {
    RatFun f(testutil::random_poly(rng, 3, 2, 1, 0), testutil::random_poly(rng, 2, 1, 1, 0));
    for (auto sc : {SH, QC}) {
      int l = int(rng() % 7) - 3;
      CHECK(apply_shift(apply_shift(f, l, sc), -l, sc) == f);
      CHECK(apply_shift(apply_shift(f, l, 2, sc), -l, -2, sc) == f);
    }
  }
}

TEST_CASE("splitting factorization") {
  auto s = splitting_factorization(RatFun(y * y * y * (q * y - 1)), QC);
  CHECK(s.special == RatFun(y * y * y));
  CHECK(s.normal == ypp(q * y - 1));
  RatFun p((x + 2) * ((x + 1) * y * y + 3 * y + x));
  auto t = splitting_factorization(p, SH);
  CHECK(t.special == RatFun(x + 2));
  CHECK(t.special * RatFun(t.normal) == p);
  std::mt19937_64 rng(22);
  for (int it = 0; it < 30; ++it) {
    int k = int(rng() % 5);
    Poly m = random_factor(rng, QC) * random_factor(rng, QC);
    Poly c = testutil::random_poly(rng, 0, 1, 1, 0);
    RatFun f(c * Poly::var(VY, k) * m);
    auto sp = splitting_factorization(f, QC);
    CHECK(sp.special.num.min_degree(VY) == k);
    CHECK(sp.special.num.degree(VY) == k);
    CHECK(associates(sp.normal, m));
    CHECK(sp.special * RatFun(sp.normal) == f);
  }
}

TEST_CASE("dispersion set") {
  CHECK(dispersion_set(y + 2, y, SH) == std::set<int>{2});
  CHECK(dispersion_set(q * y - 1, q * q * y - 1, QC) == std::set<int>{-1});
  CHECK(dispersion_set(q * y - 1, q * q * y - 1, QC) == scan_dispersion(q * y - 1, q * q * y - 1, QC, 3));
  CHECK(dispersion_set(y + x, y + x + 7, SH) == std::set<int>{-7});
  CHECK_THROWS(dispersion_set(y * (y + 1), y + 1, QC));
  std::mt19937_64 rng(23);
  for (auto sc : {SH, QC}) {
    for (int it = 0; it < 25; ++it) {
      Poly f1 = random_factor(rng, sc), f2 = random_factor(rng, sc), f3 = random_factor(rng, sc);
      int s1 = int(rng() % 9) - 4, s2 = int(rng() % 9) - 4;
      Poly a = f1 * f2;
      Poly b = sigma_poly(f1, VY, -s1, sc) * sigma_poly(f2, VY, -s2, sc) * f3;
      auto d = dispersion_set(a, b, sc);
      CHECK(d.count(s1));
      CHECK(d.count(s2));
      CHECK(d == scan_dispersion(a, b, sc, 12));
    }
    // planted sigma-coprime pair: a in y + x, b in y + 2x
    Poly a = sc == SH ? (y + x) * (y + x + 3) : (y - x) * (q * y - x);
    Poly b = sc == SH ? (y + 2 * x + 1) : (y - x * x);
    CHECK(dispersion_set(a, b, sc).empty());
  }
}

TEST_CASE("sigma-normality and multiplicative closure") {
  CHECK(is_sigma_normal(y + 1, SH));
  CHECK_FALSE(is_sigma_normal((y + 1) * (y + 3), SH));
  CHECK_FALSE(is_sigma_normal(y * (q * y - 1), QC));
  CHECK_FALSE(is_sigma_normal((q * y - 1) * (q * q * q * y - 1), QC));
  std::mt19937_64 rng(24);
  for (auto sc : {SH, QC})
    for (int it = 0; it < 20; ++it) {
      Poly a = random_factor(rng, sc), b = random_factor(rng, sc);
      bool coprime = true;
      for (int l : dispersion_set(a, b, sc))
        if (l != 0) coprime = false;
      if (coprime && gcd(a, b).degree(VY) <= 0) CHECK(is_sigma_normal(a * b, sc));
      Poly c = a * sigma_poly(a, VY, 1 + int(rng() % 3), sc);
      CHECK_FALSE(is_sigma_normal(c, sc));
    }
  // products of y-powers stay special: y^a * y^b divides its q-shift
  Poly p = Poly::var(VY, 2) * Poly::var(VY, 3);
  CHECK(divides(p, sigma_poly(p, VY, 1, QC)));
}

TEST_CASE("sigma-coprime decomposition") {
  auto cd = sigma_coprime_decomposition(q * q * q * y - 1, q * q * y - 1, QC);
  CHECK_FALSE(cd.etilde.depends_on(VY));
  REQUIRE(cd.parts.size() == 1);
  CHECK(associates(cd.parts[0].d, q * q * y - 1));
  CHECK(cd.parts[0].k == 1);
  CHECK(cd.parts[0].l == 1);
  auto triv = sigma_coprime_decomposition(y + x, y + 2 * x, SH);
  CHECK(triv.etilde == y + x);
  CHECK(triv.parts.empty());
  std::mt19937_64 rng(25);
  for (auto sc : {SH, QC})
    for (int it = 0; it < 15; ++it) {
      Poly d1 = random_factor(rng, sc), d2 = random_factor(rng, sc), f = random_factor(rng, sc);
      Poly d = d1 * d2;
      if (!is_sigma_normal(d, sc) || !dispersion_set(f, d, sc).empty()) continue;
      auto sqf = squarefree_decomposition(d);
      if (sqf.size() != 1 || sqf[0].second != 1) continue;
      int l1 = 1 + int(rng() % 3), l2 = -1 - int(rng() % 3);
      Poly e = f * sigma_poly(d1, VY, l1, sc).pow(2) * sigma_poly(d2, VY, l2, sc);
      auto r = sigma_coprime_decomposition(e, d, sc);
      CHECK(associates(r.etilde, f));
      Poly prod = r.etilde;
      for (auto& p : r.parts) {
        prod *= sigma_poly(p.d, VY, p.l, sc).pow(unsigned(p.k));
        CHECK(divides(p.d, d));
      }
      CHECK(associates(prod, e));
      int found = 0;
      for (auto& p : r.parts) {
        if (p.l == l1 && p.k == 2 && associates(p.d, d1)) ++found;
        if (p.l == l2 && p.k == 1 && associates(p.d, d2)) ++found;
      }
      CHECK(found == 2);
    }
}

TEST_CASE("strong sigma-factorization") {
  {
    RatFun p((q * y - 1) * (q * q * y - 1)), K(1 - q * y);
    auto sf = strong_sigma_factorization(p, K, QC);
    REQUIRE(sf.parts.size() == 1);
    CHECK(sf.parts[0].first == RatFun(1 - q * q * y));
    OpExponent a;
    a.add(-1, 1);
    a.add(0, 1);
    CHECK(sf.parts[0].second == a);
    CHECK(sf.expand(QC) == p);
  }
  {
    RatFun p((y + 1) * (y + 2)), K(y + 1);
    auto sf = strong_sigma_factorization(p, K, SH);
    REQUIRE(sf.parts.size() == 1);
    CHECK(sf.parts[0].first == RatFun(y + 2));
    OpExponent a;
    a.add(-1, 1);
    a.add(0, 1);
    CHECK(sf.parts[0].second == a);
    CHECK(sf.expand(SH) == p);
  }
  {
    RatFun p(y + 5), K(y + 1);
    auto sf = strong_sigma_factorization(p, K, SH);
    REQUIRE(sf.parts.size() == 1);
    OpExponent one;
    one.add(0, 1);
    CHECK(sf.parts[0].second == one);
  }
  std::mt19937_64 rng(26);
  for (auto sc : {SH, QC})
    for (int it = 0; it < 10; ++it) {
      Poly a = random_factor(rng, sc), b = random_factor(rng, sc), c = random_factor(rng, sc);
      RatFun K(sigma_poly(a, VY, 2, sc) * c, sigma_poly(b, VY, -1, sc));
      if (!is_sigma_reduced(K, sc)) continue;
      RatFun p(a * sigma_poly(a, VY, 1, sc).pow(2) * b * sigma_poly(b, VY, 3, sc) * x);
      auto sf = strong_sigma_factorization(p, K, sc);
      CHECK(sf.expand(sc) == p);
      CHECK_FALSE(sf.special.depends_on(VY));
      for (auto& [base, e] : sf.parts) {
        CHECK(strongly_coprime(base.num, K, sc));
        CHECK(is_sigma_normal(base.num, sc));
        CHECK(base == sigma_monic(base, sc));
        for (auto& [i, k] : e.terms) CHECK(k > 0);
      }
      for (size_t i = 0; i < sf.parts.size(); ++i)
        for (size_t j = i + 1; j < sf.parts.size(); ++j)
          CHECK(dispersion_set(sf.parts[i].first.num, sf.parts[j].first.num, sc).empty());
    }
}

TEST_CASE("rational normal form") {
  {
    RatFun f = RatFun(-q * (q * y - 1));
    auto r = rnf_standard(f, QC);
    CHECK(r.kernel == RatFun(1 - q * y));
    CHECK(r.shell == RatFun(y));
  }
  {
    auto r = rnf_standard(RatFun(y + 1), SH);
    CHECK(r.kernel == RatFun(y + 1));
    CHECK(r.shell == RatFun(1));
  }
  std::mt19937_64 rng(27);
  for (auto sc : {SH, QC})
    for (int it = 0; it < 20; ++it) {
      RatFun K0(random_factor(rng, sc), random_factor(rng, sc));
      if (!is_sigma_reduced(K0, sc)) continue;
      RatFun S0(random_factor(rng, sc) * random_factor(rng, sc), random_factor(rng, sc));
      RatFun f = K0 * sigma_y(S0, 1, sc) / S0;
      auto r = rnf_standard(f, sc);
      CHECK(r.kernel * sigma_y(r.shell, 1, sc) / r.shell == f);
      CHECK(is_sigma_standard(r.kernel, sc));
      CHECK(normal_part(r.shell.den, sc) == ypp(r.shell.den));
    }
}

TEST_CASE("canonical representation") {
  RatFun fn(-(q * (q - 1) * y), (q * y - 1) * (q * q * y - 1));
  auto c = canonical_representation(RatFun(y) + fn, QC);
  CHECK(c.poly == RatFun(y));
  CHECK(c.special.is_zero());
  CHECK(c.normal == fn);
  auto p = canonical_representation(RatFun(y * y + x), SH);
  CHECK(p.poly == RatFun(y * y + x));
  CHECK(p.special.is_zero());
  CHECK(p.normal.is_zero());
  RatFun g(Poly(1), y * (q * y - 1));
  auto s = canonical_representation(g, QC);
  CHECK(associates(s.special.den, y));
  CHECK(associates(s.normal.den, q * y - 1));
  CHECK(s.poly + s.special + s.normal == g);
}

TEST_CASE("rational terms") {
  CHECK(is_rational_term(RatFun(1), SH));
  CHECK(is_rational_term(RatFun(Poly(1), q * q), QC));
  CHECK_FALSE(is_rational_term(RatFun(x - y, y * (q * y - 1)), QC));
  CHECK_FALSE(is_rational_term(RatFun(y + 1), SH));
}
