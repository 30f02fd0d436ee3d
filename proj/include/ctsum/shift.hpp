#pragma once

#include <map>
#include <set>
#include <vector>

#include "ctsum/algebra.hpp"

namespace ctsum {

// Element of Z[sigma, sigma^-1]: shift power -> integer exponent.
struct OpExponent {
  std::map<int, int> terms;

  bool is_zero() const { return terms.empty(); }
  int hdeg() const;  // INT_MIN for zero
  int tdeg() const;  // INT_MAX for zero
  // sigma^s * alpha
  OpExponent shifted(int s) const;
  void add(int power, int k);
  bool operator==(const OpExponent& o) const { return terms == o.terms; }
};

// p^alpha = prod sigma^i(p)^k_i, exact.
RatFun op_power(const RatFun& p, const OpExponent& alpha, ShiftCase sc);

// sigma_y^l(f).
RatFun apply_shift(const RatFun& f, int l, ShiftCase sc);
// sigma_x^m sigma_y^n(f).
RatFun apply_shift(const RatFun& f, int m, int n, ShiftCase sc);

// p = special * normal with special sigma-special (an element of F in the
// shift case, c*y^k in the q-case) and normal y-primitive, free of
// sigma-special factors.
struct Splitting {
  RatFun special;
  Poly normal;
};
Splitting splitting_factorization(const RatFun& p, ShiftCase sc);

// y-primitive representative of p with every sigma-special factor removed.
Poly normal_part(const Poly& p, ShiftCase sc);

// {l : gcd(a, sigma^l(b)) not in F}. Inputs must be free of nontrivial
// sigma-special factors.
std::set<int> dispersion_set(const Poly& a, const Poly& b, ShiftCase sc);

bool is_sigma_normal(const Poly& p, ShiftCase sc);
// gcd(u, sigma^l(v)) = 1 for every nonzero l (and u, v coprime).
bool is_sigma_reduced(const RatFun& K, ShiftCase sc);
// sigma-reduced, and in the q-case u(0) q^l != v(0) for all l < 0.
bool is_sigma_standard(const RatFun& K, ShiftCase sc);
// gcd(u, sigma^l(p)) = gcd(v, sigma^-l(p)) = 1 for all l >= 0.
bool strongly_coprime(const Poly& p, const RatFun& K, ShiftCase sc);

// e = unit * etilde * prod sigma^l_i(d_i)^k_i with etilde sigma-coprime with d
// (no common factor with any shift of d, including the zero shift) and each
// d_i a factor of d. Factors are y-primitive; pieces sharing l are coprime.
struct CoprimePart {
  Poly d;
  int k;
  int l;
};
struct CoprimeDecomposition {
  Poly etilde;
  std::vector<CoprimePart> parts;
};
CoprimeDecomposition sigma_coprime_decomposition(const Poly& e, const Poly& d, ShiftCase sc);

// special * prod base_i^exp_i with sigma-monic, sigma-normal, pairwise
// sigma-coprime bases. In the strong form every base is strongly coprime
// with the kernel and all exponents have nonnegative entries.
struct SigmaFactorization {
  RatFun special;
  std::vector<std::pair<RatFun, OpExponent>> parts;
  RatFun expand(ShiftCase sc) const;
};
SigmaFactorization strong_sigma_factorization(const RatFun& p, const RatFun& K, ShiftCase sc);

// f = kernel * sigma(shell) / shell with a sigma-standard kernel and a shell
// whose denominator has no nontrivial sigma-special factor.
struct RNF {
  RatFun kernel;
  RatFun shell;
};
RNF rnf_standard(const RatFun& f, ShiftCase sc);

// f = poly + special + normal; special and normal proper, den(special)
// sigma-special, den(normal) free of sigma-special factors.
struct CanonicalRep {
  RatFun poly;
  RatFun special;
  RatFun normal;
};
CanonicalRep canonical_representation(const RatFun& f, ShiftCase sc);

// For a sigma-standard kernel: K = 1 (shift case) or K = q^j (q-case).
bool is_rational_term(const RatFun& K, ShiftCase sc);

}  // namespace ctsum
