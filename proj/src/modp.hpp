#pragma once

// Dense univariate arithmetic modulo the Mersenne prime 2^61 - 1.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace ctsum::modp {

constexpr uint64_t P = (uint64_t(1) << 61) - 1;

inline uint64_t add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P - b; }
inline uint64_t mul(uint64_t a, uint64_t b) {
  unsigned __int128 z = (unsigned __int128)a * b;
  uint64_t lo = uint64_t(z & P), hi = uint64_t(z >> 61);
  return add(lo, hi);
}
inline uint64_t pow(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline uint64_t inv(uint64_t a) { return pow(a, P - 2); }

inline uint64_t reduce(const mpz_class& z) {
  static const mpz_class Pz = [] {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, 61);
    p -= 1;
    return p;
  }();
  mpz_class r;
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), Pz.get_mpz_t());
  return mpz_get_ui(r.get_mpz_t());
}
inline uint64_t from_int(long v) { return v >= 0 ? uint64_t(v) % P : sub(0, uint64_t(-v) % P); }

using UPoly = std::vector<uint64_t>;  // coefficient i of y^i

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// p(y + s)
inline UPoly taylor_shift(UPoly a, uint64_t s) {
  int n = int(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) a[j] = add(a[j], mul(s, a[j + 1]));
  return a;
}

// p(c * y)
inline UPoly scale(UPoly a, uint64_t c) {
  uint64_t f = 1;
  for (auto& x : a) {
    x = mul(x, f);
    f = mul(f, c);
  }
  return a;
}

inline int gcd_degree(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    uint64_t il = inv(b.back());
    while (a.size() >= b.size()) {
      uint64_t f = mul(a.back(), il);
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] = sub(a[off + i], mul(f, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return int(a.size()) - 1;
}

}  // namespace ctsum::modp
