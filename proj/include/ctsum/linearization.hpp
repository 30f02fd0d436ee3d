#pragma once

#include "ctsum/reduction.hpp"

namespace ctsum {

struct Linearization {
  RatFun g;
  Remainder t;
};

// s = Delta_K(g) + t where the significant denominator of t is sigma-coprime
// with d, so that any F-linear combination of t with a remainder whose
// significant denominator divides d is again a remainder. d must be
// sigma-normal and strongly coprime with K (1 for no constraint).
Linearization linearize_against(const Poly& d, const Remainder& s, const RatFun& K, ShiftCase sc,
                                PolynomialReducer* reducer = nullptr);

// Same with d the significant denominator of r.
Linearization remainder_linearization(const Remainder& r, const Remainder& s, const RatFun& K,
                                      ShiftCase sc, PolynomialReducer* reducer = nullptr);

// Significant denominator of r as a y-primitive polynomial (1 if r has no h part).
Poly significant_denominator(const Remainder& r);

}  // namespace ctsum
