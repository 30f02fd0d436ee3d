#pragma once

#include <utility>
#include <vector>

#include "ctsum/ratfun.hpp"

namespace ctsum {

// Polynomials in y over F are RatFun values with y-free denominators.

// Normalizes a nonzero polynomial in y to be sigma-monic: monic in the shift
// case, lowest nonzero coefficient 1 in the q-case. Constants map to 1.
RatFun sigma_monic(const RatFun& p, ShiftCase sc);

// Division with remainder in F[y].
void ydivrem(const RatFun& a, const RatFun& b, RatFun& q, RatFun& r);
RatFun yrem(const RatFun& a, const RatFun& b);
RatFun yquo_exact(const RatFun& a, const RatFun& b);

struct ExtGcd {
  RatFun g, s, t;
};
// s*a + t*b = g with g = gcd(a, b) sigma-monic (1 if the gcd lies in F).
ExtGcd poly_gcd_ext(const RatFun& a, const RatFun& b, ShiftCase sc);

// Solves s*u + t*D = rhs with deg s < deg D; requires gcd(u, D) = 1.
std::pair<RatFun, RatFun> solve_bezout(const RatFun& u, const RatFun& D, const RatFun& rhs);

// Squarefree decomposition of a y-primitive representative; factors are
// y-primitive with positive leading coefficient and strictly increasing
// multiplicities.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

// Splits a proper f = N/D into pieces with denominators dividing factor_i^mult_i.
// The factor powers must be pairwise coprime with product D up to a unit.
std::vector<RatFun> partial_fractions(const RatFun& f,
                                      const std::vector<std::pair<Poly, int>>& factors);

// Resultant with respect to v (subresultant algorithm).
Poly resultant(const Poly& a, const Poly& b, int v = VY);

using Matrix = std::vector<std::vector<RatFun>>;
// Basis of the right nullspace of M (rows x ncols); each vector has its last
// nonzero entry equal to 1.
std::vector<std::vector<RatFun>> solve_nullspace(const Matrix& M, size_t ncols);
// Rank over F.
size_t matrix_rank(const Matrix& M, size_t ncols);

}  // namespace ctsum
