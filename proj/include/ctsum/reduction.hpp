#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "ctsum/shift.hpp"

namespace ctsum {

// Delta_K(g) = K * sigma(g) - g.
RatFun delta_K(const RatFun& g, const RatFun& K, ShiftCase sc);
// phi_K(p) = u * sigma(p) - v * p with u = K.num, v = K.den.
RatFun phi_K(const RatFun& p, const RatFun& K, ShiftCase sc);

struct NormalReduction {
  RatFun g, h, b;
};
// f = Delta_K(g) + h + b/v with h proper, den(h) sigma-normal and strongly
// coprime with K. Requires K sigma-reduced, f proper, den(f) free of
// sigma-special factors.
NormalReduction normal_reduction(const RatFun& f, const RatFun& K, ShiftCase sc);

// Local step for a single piece f with denominator sigma^l(d)^k, d strongly
// coprime with K: f = Delta_K(g) + h + b/v with den(h) dividing d^k.
NormalReduction local_normal_reduction(const RatFun& f, const Poly& d, int k, int l,
                                       const RatFun& K, ShiftCase sc);

struct SpecialReduction {
  RatFun g;  // Laurent polynomial in 1/y
  RatFun b;
};
// q-case only: f proper with denominator a power of y, K sigma-standard.
SpecialReduction special_reduction(const RatFun& f, const RatFun& K, ShiftCase sc);

enum class CaseTag { C1_1, C1_2, C1_3, C1_4, C2_1, C2_2, C2_3 };
std::string case_tag_name(CaseTag t);

struct EchelonData {
  RatFun kernel;
  CaseTag case_tag;
  std::optional<int> exceptional_index;
  std::optional<RatFun> exceptional_element;  // r
  std::set<int> complement_degrees;
  int dimension = 0;
};
EchelonData echelon_data(const RatFun& K, ShiftCase sc);
// Closed-form dimension of the standard complement of im(phi_K).
int complement_dimension(const RatFun& K, ShiftCase sc);

struct PolyReduction {
  RatFun a, p;
};

// Projects polynomials onto im(phi_K) and its standard complement. Echelon
// basis elements are built on demand and cached.
class PolynomialReducer {
 public:
  PolynomialReducer(const RatFun& K, ShiftCase sc);
  const EchelonData& echelon() const { return ed_; }
  // b = phi_K(a) + p with p supported on the complement degrees.
  PolyReduction reduce(const RatFun& b);

 private:
  struct Basis {
    YPoly pre, img;  // img has leading coefficient 1
  };
  const Basis& basis(int deg);
  YPoly phi_mono(int i) const;

  RatFun K_;
  ShiftCase sc_;
  EchelonData ed_;
  int d_ = 0;
  int offset_ = 0;  // deg phi(y^i) = i + offset_ for generic i
  std::map<int, Basis> cache_;
};

PolyReduction polynomial_reduction(const RatFun& b, const RatFun& K, ShiftCase sc);

// r = h + p/v.
struct Remainder {
  RatFun h;
  RatFun p;
  Poly v{1};
  RatFun value() const;
  bool is_zero() const { return h.is_zero() && p.is_zero(); }
};

// Checks the structural conditions on a remainder with respect to K.
bool is_valid_remainder(const Remainder& r, const EchelonData& ed, ShiftCase sc);

struct ReductionOutcome {
  RatFun kernel;
  RatFun shell;
  RatFun g;
  Remainder remainder;
  bool summable = false;
};

// S = Delta_K(g) + r for a given sigma-standard kernel K and shell S.
ReductionOutcome reduce_shell(const RatFun& S, const RatFun& K, ShiftCase sc,
                              PolynomialReducer* reducer = nullptr);
// Reduction of the term with sigma_y-quotient `quotient`.
ReductionOutcome hypergeom_reduction(const RatFun& quotient, ShiftCase sc);

}  // namespace ctsum
