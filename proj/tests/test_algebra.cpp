#include <random>

#include "ctsum/algebra.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ctsum;

namespace {
const RatFun Y = RatFun::var(VY), X = RatFun::var(VX), Q = RatFun::var(VQ);
}

TEST_CASE("extended gcd examples") {
  auto e = poly_gcd_ext(Y * Y - 1, Y - 1, ShiftCase::Shift);
  CHECK(e.g == Y - 1);
  CHECK(e.s * (Y * Y - 1) + e.t * (Y - 1) == e.g);
  auto f = poly_gcd_ext(Y - X, Y + X, ShiftCase::Shift);
  CHECK(f.g == RatFun(1));
  CHECK(f.s * (Y - X) + f.t * (Y + X) == RatFun(1));
  auto z = poly_gcd_ext(RatFun(), RatFun(), ShiftCase::Shift);
  CHECK(z.g.is_zero());
  CHECK(z.s.is_zero());
}

TEST_CASE("extended gcd identity on random pairs") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    RatFun c(testutil::random_poly(rng, 1, 1, 1, 0));
    RatFun a = RatFun(testutil::random_poly(rng, 3, 1, 1, 0)) * c;
    RatFun b = RatFun(testutil::random_poly(rng, 4, 1, 1, 0)) * c;
    b = b / RatFun(Poly(3) + Poly::var(VX));
    for (auto sc : {ShiftCase::Shift, ShiftCase::Q}) {
      auto e = poly_gcd_ext(a, b, sc);
      CHECK(e.s * a + e.t * b == e.g);
      if (!e.g.is_zero()) {
        CHECK(yrem(a, e.g).is_zero());
        CHECK(yrem(b, e.g).is_zero());
        if (c.num.depends_on(VY)) CHECK(yrem(e.g, RatFun(ypp(c.num))).is_zero());
      }
    }
  }
}

TEST_CASE("squarefree decomposition") {
  Poly y = Poly::var(VY);
  auto d = squarefree_decomposition((y + 1) * (y + 1) * (y + 2));
  REQUIRE(d.size() == 2);
  CHECK(d[0].first == y + 2);
  CHECK(d[0].second == 1);
  CHECK(d[1].first == y + 1);
  CHECK(d[1].second == 2);
  auto s = squarefree_decomposition(y * y + Poly::var(VX));
  REQUIRE(s.size() == 1);
  CHECK(s[0].second == 1);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    Poly a = ypp(testutil::random_poly(rng, 2, 1, 1, 0) * y + 1);
    Poly b = ypp(testutil::random_poly(rng, 1, 1, 1, 0) * y + 3);
    Poly p = a * b * b * b;
    auto dd = squarefree_decomposition(p);
    Poly prod(1);
    for (auto& [f, m] : dd) prod *= f.pow(m);
    CHECK(associates(prod, p));
    for (size_t i = 1; i < dd.size(); ++i) CHECK(dd[i - 1].second < dd[i].second);
  }
}

TEST_CASE("partial fractions") {
  Poly y = Poly::var(VY), q = Poly::var(VQ);
  Poly f1 = q * y - 1, f2 = q * q * y - 1;
  RatFun f = RatFun(-(q * (q - 1) * y), f1 * f2);
  auto parts = partial_fractions(f, {{f1, 1}, {f2, 1}});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] + parts[1] == f);
  CHECK(divides(parts[0].den, f1));
  CHECK(divides(parts[1].den, f2));
  auto single = partial_fractions(RatFun(Poly(1), y + 1), {{y + 1, 1}});
  CHECK(single[0] == RatFun(Poly(1), y + 1));
  std::mt19937_64 rng(9);
  for (int it = 0; it < 20; ++it) {
    Poly a = y * y + testutil::random_poly(rng, 1, 1, 0, 1);
    Poly b = y + testutil::random_poly(rng, 0, 2, 0, 1) + 7;
    if (!ygcd(a, b).is_one()) continue;
    Poly n = testutil::random_poly(rng, 3, 1, 0, 0);
    RatFun g(n, a * b * b);
    if (!associates(g.den, a * b * b)) continue;
    auto ps = partial_fractions(g, {{a, 1}, {b, 2}});
    CHECK(ps[0] + ps[1] == g);
  }
}

TEST_CASE("resultant vanishes exactly on common factors") {
  std::mt19937_64 rng(13);
  Poly y = Poly::var(VY);
  for (int it = 0; it < 30; ++it) {
    Poly a = testutil::random_poly(rng, 3, 2, 0, 0) * y + 1;
    Poly b = testutil::random_poly(rng, 2, 1, 1, 0) * y + 2;
    Poly c = y + testutil::random_poly(rng, 0, 1, 1, 1);
    bool common = !ygcd(a, b).is_one();
    CHECK(resultant(a, b).is_zero() == common);
    CHECK(resultant(a * c, b * c).is_zero());
  }
  // Res(y - r, y - s) = r - s
  Poly r = Poly::var(VX), s = Poly::var(VQ);
  CHECK(resultant(y - r, y - s) == r - s);
  // Res(y^2 + 1, y - 2) = 5
  CHECK(resultant(y * y + 1, y - 2) == Poly(5));
}

TEST_CASE("nullspace") {
  Matrix I = {{RatFun(1), RatFun(0)}, {RatFun(0), RatFun(1)}};
  CHECK(solve_nullspace(I, 2).empty());
  Matrix A = {{X + 1, X + 1}};
  auto ns = solve_nullspace(A, 2);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == RatFun(-1));
  CHECK(ns[0][1] == RatFun(1));
  std::mt19937_64 rng(17);
  for (int it = 0; it < 10; ++it) {
    Matrix M(4, std::vector<RatFun>(6));
    for (auto& row : M)
      for (auto& e : row) {
        Poly n = testutil::random_poly(rng, 0, 2, 0, 1);
        Poly d = testutil::random_poly(rng, 0, 1, 0, 0);
        e = RatFun(n, d);
      }
    if (it % 3 == 0) M[3] = M[0];
    auto basis = solve_nullspace(M, 6);
    for (auto& v : basis)
      for (auto& row : M) {
        RatFun s;
        for (size_t j = 0; j < 6; ++j) s += row[j] * v[j];
        CHECK(s.is_zero());
      }
    CHECK(matrix_rank(M, 6) + basis.size() == 6);
  }
}
