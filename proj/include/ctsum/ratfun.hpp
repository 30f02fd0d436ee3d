#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctsum/poly.hpp"

namespace ctsum {

enum class ShiftCase { Shift, Q };

// Reduced fraction num/den over Z[vars]: gcd(num, den) = 1 and the leading
// coefficient of den is positive. Elements of F (coefficient field) are the
// y-free ones; elements of F(y) are arbitrary.
class RatFun {
 public:
  Poly num;
  Poly den{1};

  RatFun() = default;
  RatFun(long c) : num(c) {}
  RatFun(const mpz_class& c) : num(c) {}
  RatFun(const mpq_class& c);
  RatFun(Poly n) : num(std::move(n)) {}
  RatFun(const Poly& n, const Poly& d);
  // Trusted constructor: caller guarantees canonical form.
  static RatFun raw(Poly n, Poly d);
  static RatFun var(int v) { return RatFun(Poly::var(v)); }

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return num.is_one() && den.is_one(); }
  bool is_poly() const { return den.is_one(); }
  bool is_const() const { return num.is_const() && den.is_const(); }
  bool depends_on(int v) const { return num.depends_on(v) || den.depends_on(v); }
  // Polynomial in y over F: denominator free of y.
  bool is_ypoly() const { return !den.depends_on(VY); }
  bool is_yfree() const { return !depends_on(VY); }
  mpq_class const_value() const;

  RatFun operator-() const { return raw(-num, den); }
  RatFun inv() const;
  RatFun pow(int e) const;

  bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  std::string str(const Names& n = default_names()) const;
  size_t size() const { return num.size() + den.size(); }
};

RatFun operator+(const RatFun& a, const RatFun& b);
RatFun operator-(const RatFun& a, const RatFun& b);
RatFun operator*(const RatFun& a, const RatFun& b);
RatFun operator/(const RatFun& a, const RatFun& b);
inline RatFun& operator+=(RatFun& a, const RatFun& b) { return a = a + b; }
inline RatFun& operator-=(RatFun& a, const RatFun& b) { return a = a - b; }
inline RatFun& operator*=(RatFun& a, const RatFun& b) { return a = a * b; }
inline RatFun& operator/=(RatFun& a, const RatFun& b) { return a = a / b; }

using CoeffElem = RatFun;
using YRat = RatFun;

// Sum of many terms with a balanced reduction tree.
RatFun sum(std::vector<RatFun> terms);

// --- shifts -------------------------------------------------------------

// sigma_v^l applied to a polynomial, exact up to a power of q:
// returns P(v + l) in the shift case, and q^s * P(q^l v) with s >= 0 minimal
// making the result a polynomial in the q-case.
Poly sigma_poly(const Poly& p, int v, int l, ShiftCase sc);
// Exact shift of a rational function.
RatFun sigma(const RatFun& f, int v, int l, ShiftCase sc);
inline RatFun sigma_y(const RatFun& f, int l, ShiftCase sc) { return sigma(f, VY, l, sc); }
inline RatFun sigma_x(const RatFun& f, int l, ShiftCase sc) { return sigma(f, VX, l, sc); }

// --- F[y] helpers on integer representatives ------------------------------

// Content with respect to y (an element of Z[params]).
Poly ycontent(const Poly& p);
// Primitive part with respect to y, positive leading coefficient; the
// canonical representative of p in F[y] up to units.
Poly ypp(const Poly& p);
// gcd in F[y] of y-primitive inputs (or arbitrary inputs, normalized).
Poly ygcd(const Poly& a, const Poly& b);
inline int ydeg(const Poly& p) { return p.degree(VY); }
// True if a and b are equal up to a unit of F.
bool associates(const Poly& a, const Poly& b);

// --- dense univariate view ------------------------------------------------

// Polynomial in y with coefficients in F, dense by degree.
struct YPoly {
  std::vector<RatFun> c;

  YPoly() = default;
  explicit YPoly(std::vector<RatFun> cs) : c(std::move(cs)) { trim(); }
  static YPoly from(const RatFun& f);
  RatFun to_rf() const;
  int deg() const { return int(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  RatFun at(int i) const { return i >= 0 && i < int(c.size()) ? c[i] : RatFun(); }
  void trim();
};

// Laurent polynomial in y over F.
struct LaurentPoly {
  std::map<int, RatFun> terms;
  int hdeg() const;  // INT_MIN for zero
  int tdeg() const;  // INT_MAX for zero
  RatFun to_rf() const;
  static LaurentPoly from(const RatFun& f);  // f with denominator c*y^k
};

}  // namespace ctsum
