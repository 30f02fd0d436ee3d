#include "ctsum/linearization.hpp"

#include <optional>
#include <stdexcept>

namespace ctsum {

Poly significant_denominator(const Remainder& r) {
  if (r.h.is_zero() || !r.h.den.depends_on(VY)) return Poly(1);
  return ypp(r.h.den);
}

Linearization linearize_against(const Poly& d, const Remainder& s, const RatFun& K, ShiftCase sc,
                                PolynomialReducer* reducer) {
  if (s.v != K.den) throw std::invalid_argument("linearization: remainder does not match the kernel");
  if (!s.p.is_ypoly()) throw std::invalid_argument("linearization: invalid remainder");
  if (!s.h.is_zero() && s.h.num.degree(VY) >= s.h.den.degree(VY))
    throw std::invalid_argument("linearization: remainder part is not proper");
  Poly e = significant_denominator(s);
  if (!d.depends_on(VY) || !e.depends_on(VY)) return {RatFun(), s};

  CoprimeDecomposition cd = sigma_coprime_decomposition(e, d, sc);
  bool shifted = false;
  for (auto& p : cd.parts)
    if (p.l != 0) shifted = true;
  if (!shifted) return {RatFun(), s};

  std::vector<std::pair<Poly, int>> factors;
  if (cd.etilde.depends_on(VY)) factors.push_back({cd.etilde, 1});
  for (auto& p : cd.parts) factors.push_back({ypp(sigma_poly(p.d, VY, p.l, sc)), p.k});
  std::vector<RatFun> pieces = partial_fractions(s.h, factors);

  std::vector<RatFun> gs, hs, bs;
  size_t off = cd.etilde.depends_on(VY) ? 1 : 0;
  if (off) hs.push_back(pieces[0]);
  for (size_t i = 0; i < cd.parts.size(); ++i) {
    const RatFun& piece = pieces[off + i];
    if (piece.is_zero()) continue;
    NormalReduction nr = local_normal_reduction(piece, cd.parts[i].d, cd.parts[i].k, cd.parts[i].l, K, sc);
    gs.push_back(nr.g);
    hs.push_back(nr.h);
    bs.push_back(nr.b);
  }
  std::optional<PolynomialReducer> local;
  if (!reducer) reducer = &local.emplace(K, sc);
  PolyReduction pr = reducer->reduce(sum(bs));
  gs.push_back(pr.a);
  Linearization out;
  out.g = sum(gs);
  out.t = {sum(hs), s.p + pr.p, s.v};
  return out;
}

Linearization remainder_linearization(const Remainder& r, const Remainder& s, const RatFun& K,
                                      ShiftCase sc, PolynomialReducer* reducer) {
  if (r.v != K.den) throw std::invalid_argument("linearization: remainder does not match the kernel");
  return linearize_against(significant_denominator(r), s, K, sc, reducer);
}

}  // namespace ctsum
