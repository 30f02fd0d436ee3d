#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctsum/linearization.hpp"

namespace ctsum {

// Term T given by sigma_x(T) = fx * T and sigma_y(T) = gy * T.
struct BivariateTerm {
  RatFun fx;
  RatFun gy;
  ShiftCase sc = ShiftCase::Shift;
};

struct IncompatibleTerm : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// sigma_y(fx) * gy == sigma_x(gy) * fx.
bool check_compatibility(const BivariateTerm& T);

enum class LinearStatus { Yes, No, Undetermined };
struct IntegerLinearResult {
  LinearStatus status = LinearStatus::Undetermined;
  // Primitive (lambda, mu): factors are P(lambda x + mu y), resp. x^a y^b P(x^lambda y^mu).
  std::vector<std::pair<int, int>> directions;
};
// Decides whether every irreducible factor of p (over the constants) is
// integer-linear in (x, y).
IntegerLinearResult integer_linear_test(const Poly& p, ShiftCase sc);

struct Telescoper {
  std::vector<RatFun> coeffs;  // l_0 .. l_rho
  int order() const { return int(coeffs.size()) - 1; }
};

// Certificate G = g * H with H = T / shell, sigma_y(H) = kernel * H and
// sigma_x(H) = N * H. g is either a single fraction or the tagged sum
// sum_j coeff_j * g_j.
struct Certificate {
  RatFun kernel, shell, N;
  std::optional<RatFun> g;
  std::vector<std::pair<RatFun, RatFun>> tagged;
  // g as one fraction.
  RatFun normalized() const;
  // G / T.
  RatFun relative() const { return normalized() / shell; }
};

enum class TelescopingStatus { Found, NoTelescoper, OrderBoundExceeded };

struct TelescopingOptions {
  int max_order = 12;
  bool want_certificate = true;
  bool normalize_certificate = false;
  bool skip_existence_test = false;
  // Record (g_i, r_i) with P_i * shell = Delta_K(g_i) + r_i for every order tried.
  bool keep_trace = false;
};

struct TelescopingResult {
  TelescopingStatus status = TelescopingStatus::OrderBoundExceeded;
  Telescoper telescoper;
  std::optional<Certificate> certificate;
  RatFun kernel, shell;
  Remainder remainder0;
  IntegerLinearResult existence;
  // Orders below the returned one at which the remainder system had only the
  // trivial solution.
  std::vector<int> empty_orders;
  std::vector<std::pair<RatFun, Remainder>> trace;
};

TelescopingResult hypergeom_telescoping(const BivariateTerm& T, const TelescopingOptions& opt = {});

// sum_i l_i * sigma_x^i(T)/T - (sigma_y(G) - G)/T == 0, where
// sigma_x^i(T)/T = prod_{j<i} sigma_x^j(fx).
bool verify_telescoper(const BivariateTerm& T, const Telescoper& L, const Certificate& G);
// Same check for a certificate given as G/T.
bool verify_telescoper_relative(const BivariateTerm& T, const Telescoper& L, const RatFun& c);

}  // namespace ctsum
