#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctsum {

// Variable slots. y is the summation variable, x the telescoping variable,
// q the q-shift base; user parameters follow.
constexpr int kMaxVars = 8;
constexpr int VY = 0;
constexpr int VX = 1;
constexpr int VQ = 2;
constexpr int VP0 = 3;
constexpr int kMaxParams = kMaxVars - VP0;

// Exponent vector with 16 bits per variable packed into two words so that
// plain integer comparison is lexicographic order with y most significant.
struct Mono {
  uint64_t hi = 0;
  uint64_t lo = 0;

  int deg(int v) const {
    return v < 4 ? int((hi >> (48 - 16 * v)) & 0xffff)
                 : int((lo >> (48 - 16 * (v - 4))) & 0xffff);
  }
  void set(int v, int e);
  static Mono var(int v, int e = 1) {
    Mono m;
    m.set(v, e);
    return m;
  }
  Mono operator*(const Mono& o) const { return {hi + o.hi, lo + o.lo}; }
  Mono operator/(const Mono& o) const { return {hi - o.hi, lo - o.lo}; }
  bool divides(const Mono& o) const;
  int total() const;
  bool is_one() const { return hi == 0 && lo == 0; }
  Mono without(int v) const {
    Mono m = *this;
    m.set(v, 0);
    return m;
  }
  bool operator==(const Mono& o) const { return hi == o.hi && lo == o.lo; }
  bool operator!=(const Mono& o) const { return !(*this == o); }
  bool operator<(const Mono& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
  bool operator>(const Mono& o) const { return o < *this; }
};

Mono mono_gcd(const Mono& a, const Mono& b);
Mono mono_lcm(const Mono& a, const Mono& b);

struct Term {
  Mono m;
  mpz_class c;
};

struct Names {
  std::vector<std::string> v{"y", "x", "q", "p0", "p1", "p2", "p3", "p4"};
};
const Names& default_names();

// Sparse multivariate polynomial over the integers; terms sorted by strictly
// decreasing monomial, no zero coefficients.
class Poly {
 public:
  std::vector<Term> t;

  Poly() = default;
  Poly(long c);
  Poly(const mpz_class& c);
  static Poly var(int v, int e = 1);
  static Poly monomial(const mpz_class& c, const Mono& m);

  bool is_zero() const { return t.empty(); }
  bool is_const() const { return t.empty() || (t.size() == 1 && t[0].m.is_one()); }
  bool is_one() const { return t.size() == 1 && t[0].m.is_one() && t[0].c == 1; }
  bool is_monomial() const { return t.size() == 1; }
  mpz_class const_value() const { return t.empty() ? mpz_class(0) : t[0].c; }
  size_t size() const { return t.size(); }
  const Mono& lm() const { return t[0].m; }
  const mpz_class& lc() const { return t[0].c; }
  int sign() const { return t.empty() ? 0 : sgn(t[0].c); }

  int degree(int v) const;     // -1 for the zero polynomial
  int min_degree(int v) const; // -1 for the zero polynomial
  int total_degree() const;
  bool depends_on(int v) const;
  unsigned var_mask() const;
  Mono max_degrees() const;
  size_t max_bits() const;

  // Coefficient of v^e as a polynomial free of v.
  Poly coeff(int v, int e) const;
  std::vector<Poly> coeffs(int v) const;
  static Poly from_coeffs(int v, const std::vector<Poly>& cs);
  Poly lead_coeff(int v) const { return coeff(v, degree(v)); }
  Poly tail_coeff(int v) const { return coeff(v, min_degree(v)); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly mul_term(const mpz_class& c, const Mono& m) const;
  Poly mul_scalar(const mpz_class& c) const;
  Poly div_scalar(const mpz_class& c) const;  // exact
  Poly div_mono(const Mono& m) const;         // exact

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  mpz_class content() const;  // nonnegative integer gcd of coefficients
  Mono mono_content() const;  // gcd of all monomials
  Poly derivative(int v) const;
  Poly eval(int v, const mpz_class& a) const;
  Poly pow(unsigned e) const;
  // v -> v + a
  Poly shift(int v, const mpz_class& a) const;
  // v -> q^e v, e >= 0
  Poly qscale(int v, int e) const;
  // Replace variable v by variable w (w absent).
  Poly rename(int v, int w) const;
  size_t hash() const;

  std::string str(const Names& n = default_names()) const;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

// Exact division; nullopt if b does not divide a.
std::optional<Poly> exact_div(const Poly& a, const Poly& b);
Poly div_exact(const Poly& a, const Poly& b);  // throws if not exact
bool divides(const Poly& b, const Poly& a);

// Pseudo-division with respect to v: lc(b)^k a = q b + r, k = max(deg a - deg b + 1, 0).
void pdivrem(const Poly& a, const Poly& b, int v, Poly& q, Poly& r, int& k);
Poly prem(const Poly& a, const Poly& b, int v);

// Greatest common divisor over Z[vars]; result has positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);
Poly gcd_prs(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
// Content with respect to v: gcd of the coefficients of powers of v.
Poly content(const Poly& a, int v);
Poly primpart(const Poly& a, int v);
// Makes the leading coefficient positive and divides out the integer content.
Poly normalize_int(const Poly& a);

std::string mpz_str(const mpz_class& z);

// Sorts terms by decreasing monomial and merges duplicates.
void sort_combine(std::vector<Term>& v);

}  // namespace ctsum
