// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Usage: acceptance [--only N] [corpus.jsonl]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ctsum/job.hpp"
#include "ctsum/linearization.hpp"
#include "numeric_eval.hpp"
#include "testutil.hpp"

using namespace ctsum;

namespace {

// Pinned limits.
constexpr double kReductionExampleSeconds = 1.0;
constexpr double kLinearizationSeconds = 1.0;
constexpr double kTelescoperSeconds = 10.0;
constexpr double kStantonSeconds = 300.0;
constexpr double kBenchBudgetSeconds = 600.0;
constexpr int kPlantedPerCase = 100;
constexpr int kBenchRepeats = 3;

const Poly y = Poly::var(VY), x = Poly::var(VX), q = Poly::var(VQ), B = Poly::var(VP0);
const ShiftCase SH = ShiftCase::Shift, QC = ShiftCase::Q;

RatFun R(const Poly& n, const Poly& d = Poly(1)) { return RatFun(n, d); }

double now() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool c, const std::string& what) {
    if (c) return;
    if (ok) detail = what;
    ok = false;
  }
};

bool same_up_to_unit(const std::vector<RatFun>& a, const std::vector<RatFun>& b) {
  if (a.size() != b.size() || a.empty()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] * b.back() != b[i] * a.back()) return false;
  return true;
}

BivariateTerm compile(const std::string& term, ShiftCase sc, std::vector<std::string> params = {}) {
  SymbolTable syms{params};
  return compile_quotients(parse_term_expression(term, syms), syms, sc);
}

// Times each sub-check separately against `limit`.
void timed(Check& c, const std::string& name, double limit, const std::function<void(Check&)>& f) {
  double t0 = now();
  f(c);
  double dt = now() - t0;
  std::printf("    %-28s %8.3f s\n", name.c_str(), dt);
  c.expect(dt < limit, name + " exceeded " + std::to_string(limit) + " s");
}

// ---- 1 ----
Check reduction_examples() {
  Check c;
  timed(c, "normal reduction (q)", kReductionExampleSeconds, [](Check& c) {
    RatFun K(1 - q * y), f(-q * (q - 1) * y, (q * y - 1) * (q * q * y - 1));
    auto r = normal_reduction(f, K, QC);
    c.expect(r.g == R(Poly(1), q * y - 1), "q normal reduction g");
    c.expect(r.h == R(Poly(-1), q * (1 - q * q * y)), "q normal reduction h");
    c.expect(r.b == R(Poly(1), q), "q normal reduction b");
  });
  timed(c, "normal reduction (shift)", kReductionExampleSeconds, [](Check& c) {
    auto r = normal_reduction(R(-(3 * y + 4), (y + 1) * (y + 2)), RatFun(y + 1), SH);
    c.expect(r.g == R(Poly(1), y + 1), "shift normal reduction g");
    c.expect(r.h == R(Poly(-1), y + 2), "shift normal reduction h");
    c.expect(r.b == RatFun(-1), "shift normal reduction b");
  });
  timed(c, "special reduction", kReductionExampleSeconds, [](Check& c) {
    auto r = special_reduction(R((q - 1) * (q * q - 1), y * y), RatFun(1 - q * y), QC);
    c.expect(r.g == R(q * q * (y - q + 1), y * y), "special reduction g");
    c.expect(r.b == RatFun(q * q), "special reduction b");
  });
  timed(c, "polynomial reduction", kReductionExampleSeconds, [](Check& c) {
    auto r = polynomial_reduction(RatFun(y) + R(Poly(1), q), RatFun(1 - q * y), QC);
    c.expect(r.a == R(Poly(-1), q), "polynomial reduction a");
    c.expect(r.p == R(Poly(1), q), "polynomial reduction p");
  });
  timed(c, "hypergeometric (shift)", kReductionExampleSeconds, [](Check& c) {
    RatFun K(y + 1), S(y * y * y + 4 * y * y + 2 * y - 2, (y + 1) * (y + 2));
    auto o = reduce_shell(S, K, SH);
    c.expect(o.g == R(y + 2, y + 1), "shift g");
    c.expect(o.remainder.value() == R(Poly(-1), y + 2), "shift remainder");
    c.expect(!o.summable, "shift summability verdict");
  });
  timed(c, "hypergeometric (q)", kReductionExampleSeconds, [](Check& c) {
    RatFun Kt(-q * (q * y - 1));
    RatFun St(q * q * q * y * y - q * q * y - q * y - q * q + q + 1, (q * y - 1) * (q * q * y - 1));
    auto o = hypergeom_reduction(Kt * sigma_y(St, 1, QC) / St, QC);
    c.expect(o.kernel == RatFun(1 - q * y), "q kernel");
    c.expect(o.g == R(-(q * y - q - 1), q * (q * y - 1)), "q g");
    c.expect(o.remainder.value() == R(q * y, q * q * y - 1), "q remainder");
    c.expect(!o.summable, "q summability verdict");
  });
  return c;
}

// ---- 2 ----
Remainder as_remainder(const RatFun& f, const RatFun& K) {
  RatFun qq, rr;
  ydivrem(RatFun(f.num), RatFun(f.den), qq, rr);
  return {rr / RatFun(f.den), qq * RatFun(K.den), K.den};
}

Check linearization_example() {
  Check c;
  timed(c, "remainder linearization", kLinearizationSeconds, [](Check& c) {
    RatFun K(1 - q * y);
    Remainder r = as_remainder(R(q * y, q * q * y - 1), K);
    Remainder s = as_remainder(R(q * q * y, q * q * q * y - 1), K);
    auto L = remainder_linearization(r, s, K, QC);
    c.expect(L.t.value() == R(q * q * q * y, (q * q - 1) * (q * q * y - 1)), "t");
    c.expect(r.value() + L.t.value() == R(q * (2 * q * q - 1) * y, (q * q - 1) * (q * q * y - 1)), "r + t");
  });
  return c;
}

// ---- 3 ----
Check telescoper_examples() {
  Check c;
  struct Ex {
    const char* name;
    std::string term;
    ShiftCase sc;
    std::vector<std::string> params;
    std::vector<RatFun> expected;
  };
  std::vector<Ex> exs = {
      {"binom(n+2k,k)", "binom(n+2k,k)", SH, {}, {RatFun(1), RatFun(-1), RatFun(1)}},
      {"gaussian binomial", "qbinom(n,k)", QC, {}, {R(1 - q * x), RatFun(-2), RatFun(1)}},
      {"q-Chu-Vandermonde", "qbinom(n,k)*qbinom(b,k)*qpow(k^2)", QC, {"b"},
       {R(q * (1 - q * B * x)), R(-q * (1 - q * x))}},
  };
  for (auto& e : exs)
    timed(c, e.name, kTelescoperSeconds, [&](Check& c) {
      BivariateTerm T = compile(e.term, e.sc, e.params);
      TelescopingResult r = hypergeom_telescoping(T);
      c.expect(r.status == TelescopingStatus::Found, std::string(e.name) + ": not found");
      c.expect(same_up_to_unit(r.telescoper.coeffs, e.expected), std::string(e.name) + ": telescoper differs");
    });
  return c;
}

// ---- 4 ----
const char* kStantonLeft = "pow(-1,k)*qpow(4*k^2)*qbinom(2n,n-4k)";
const char* kStantonRight =
    "qpow(2k^2)*qpochhammer(q^2,q^2,n)/(qpochhammer(q^2,q^2,2k)*qpochhammer(q^2,q^2,n-2k))"
    "*qpochhammer(-q,q^2,n-2k)*qpochhammer(-1,q^4,k)";

std::vector<RatFun> stanton_operator() {
  Poly x2 = x * x;
  return {R(-Poly::var(VQ, 3) * x2 * (q * q * x2 - 1) * (q * x2 - 1)),
          R(Poly::var(VQ, 4) * x2 * (Poly::var(VQ, 3) * x2 + q * q * x2 + q * x2 - 1)),
          R(-(Poly::var(VQ, 5) * x2 + Poly::var(VQ, 4) * x2 + Poly::var(VQ, 3) * x2 + 1)), RatFun(1)};
}

// Sum over k of a term with natural boundaries, evaluated at (n, q).
mpq_class numeric_sum(const std::string& term, long n, const mpq_class& qv) {
  SymbolTable syms;
  Expr e = parse_term_expression(term, syms);
  mpq_class s = 0;
  for (long k = -n; k <= n; ++k) {
    testutil::Point p;
    p.n = n;
    p.k = k;
    p.q = qv;
    auto v = testutil::NumericEval(syms, QC, p).value(e);
    if (v) s += *v;
  }
  return s;
}

Check stanton() {
  Check c;
  timed(c, "both sides agree numerically", kStantonSeconds, [](Check& c) {
    for (long n = 0; n <= 6; ++n)
      for (mpq_class qv : {mpq_class(2), mpq_class(-1, 3)})
        c.expect(numeric_sum(kStantonLeft, n, qv) == numeric_sum(kStantonRight, n, qv),
                 "sides differ at n = " + std::to_string(n));
  });
  double t0 = now();
  std::vector<std::vector<RatFun>> found;
  for (const char* side : {kStantonLeft, kStantonRight}) {
    std::string name = side == kStantonLeft ? "left summand" : "right summand";
    timed(c, name, kStantonSeconds, [&](Check& c) {
      BivariateTerm T = compile(side, QC);
      TelescopingResult r = hypergeom_telescoping(T);
      c.expect(r.status == TelescopingStatus::Found, name + ": not found");
      if (r.status != TelescopingStatus::Found) return;
      c.expect(r.telescoper.order() == 3, name + ": order " + std::to_string(r.telescoper.order()));
      c.expect(same_up_to_unit(r.telescoper.coeffs, stanton_operator()), name + ": operator differs");
      c.expect(r.certificate && verify_telescoper(T, r.telescoper, *r.certificate), name + ": verify failed");
      found.push_back(r.telescoper.coeffs);
    });
  }
  c.expect(found.size() == 2 && same_up_to_unit(found[0], found[1]), "sides give different telescopers");
  c.expect(now() - t0 < kStantonSeconds, "total time exceeded");
  return c;
}

// ---- 5 ----
Check bench_orders() {
  Check c;
  double t0 = now();
  for (int d : {1, 2})
    for (uint64_t seed : {1, 2, 3}) {
      BenchRow row = run_bench(d, 1, 1, 5, seed, kBenchRepeats);
      int want = d == 1 ? 2 : 3;
      std::printf("    (%d,1,1,5) seed %llu: order %d, %.3f s without / %.3f s with certificate\n", d,
                  static_cast<unsigned long long>(seed), row.order, row.seconds_without_certificate,
                  row.seconds_with_certificate);
      std::string tag = "(" + std::to_string(d) + ",1,1,5) seed " + std::to_string(seed);
      c.expect(row.order == want, tag + ": order " + std::to_string(row.order));
      c.expect(row.seconds_without_certificate <= row.seconds_with_certificate,
               tag + ": slower without certificate");
    }
  c.expect(now() - t0 < kBenchBudgetSeconds, "budget exceeded");
  return c;
}

// ---- 6 ----
Check planted_summability() {
  Check c;
  std::mt19937_64 rng(2024);
  for (ShiftCase sc : {SH, QC}) {
    int summable = 0, non_summable = 0, attempts = 0;
    while ((summable < kPlantedPerCase || non_summable < kPlantedPerCase) && attempts++ < 20 * kPlantedPerCase) {
      RatFun K0 = testutil::random_standard_kernel(rng, sc);
      RatFun g0(testutil::random_poly(rng, 2, 1, sc == QC ? 1 : 0, 0, 4),
                testutil::small_factor(rng, sc) * testutil::small_factor(rng, sc));
      RatFun S = delta_K(g0, K0, sc);
      if (S.is_zero()) continue;
      if (summable < kPlantedPerCase) {
        auto o = hypergeom_reduction(K0 * sigma_y(S, 1, sc) / S, sc);
        c.expect(o.summable && o.remainder.value().is_zero(), "planted summable term left a remainder");
        ++summable;
      }
      if (non_summable >= kPlantedPerCase) continue;
      Poly d = testutil::small_factor(rng, sc);
      if (!strongly_coprime(d, K0, sc)) continue;
      RatFun r0(testutil::random_poly(rng, d.degree(VY) - 1, 1, sc == QC ? 1 : 0, 0, 4), d);
      if (r0.is_zero()) r0 = R(Poly(1), d);
      if (!is_valid_remainder(Remainder{r0, RatFun(), K0.den}, echelon_data(K0, sc), sc)) continue;
      RatFun S2 = S + r0;
      auto o = hypergeom_reduction(K0 * sigma_y(S2, 1, sc) / S2, sc);
      c.expect(!o.summable && !o.remainder.value().is_zero(), "planted non-summable term reduced to zero");
      ++non_summable;
    }
    std::printf("    %-6s %d summable, %d non-summable\n", sc == SH ? "shift" : "q", summable, non_summable);
    c.expect(summable == kPlantedPerCase && non_summable == kPlantedPerCase, "could not plant enough terms");
  }
  return c;
}

// ---- 7 ----
// Images of y^0..y^N together with the complement monomials span F[y] up to
// the top degree, and the complement is independent of the image.
bool complement_is_direct(const RatFun& K, ShiftCase sc, const EchelonData& ed, int N) {
  std::vector<YPoly> rows;
  int top = ed.complement_degrees.empty() ? -1 : *ed.complement_degrees.rbegin();
  for (int i = 0; i <= N; ++i) {
    rows.push_back(YPoly::from(phi_K(RatFun(Poly::var(VY, i)), K, sc)));
    top = std::max(top, rows.back().deg());
  }
  auto dense = [&](const YPoly& p) {
    std::vector<RatFun> r(size_t(top) + 1);
    for (int j = 0; j <= p.deg(); ++j) r[size_t(j)] = p.c[size_t(j)];
    return r;
  };
  Matrix imgs, all;
  for (auto& p : rows) imgs.push_back(dense(p));
  all = imgs;
  for (int d : ed.complement_degrees) {
    YPoly m;
    m.c.resize(size_t(d) + 1);
    m.c[size_t(d)] = RatFun(1);
    all.push_back(dense(m));
  }
  size_t ri = matrix_rank(imgs, size_t(top) + 1), ra = matrix_rank(all, size_t(top) + 1);
  return ra == ri + ed.complement_degrees.size() && ra == size_t(top) + 1;
}

Check identities() {
  Check c;
  std::mt19937_64 rng(77);
  int n_red = 0, n_lin = 0, n_tel = 0;
  for (ShiftCase sc : {SH, QC}) {
    for (int it = 0; it < 40; ++it) {
      RatFun K = testutil::random_standard_kernel(rng, sc);
      RatFun f(testutil::random_poly(rng, 1, 1, sc == QC ? 1 : 0, 0, 4),
               testutil::small_factor(rng, sc) * sigma_poly(testutil::small_factor(rng, sc), VY, 2, sc));
      if (f.num.degree(VY) < f.den.degree(VY)) {
        auto r = normal_reduction(f, K, sc);
        c.expect(delta_K(r.g, K, sc) + r.h + r.b / RatFun(K.den) == f, "normal reduction residual");
      }
      RatFun b(testutil::random_poly(rng, 5, 1, sc == QC ? 1 : 0, 0, 5));
      auto pr = polynomial_reduction(b, K, sc);
      c.expect(phi_K(pr.a, K, sc) + pr.p == b, "polynomial reduction residual");
      RatFun S = f + b;
      if (S.is_zero()) continue;
      auto o = hypergeom_reduction(K * sigma_y(S, 1, sc) / S, sc);
      c.expect(delta_K(o.g, o.kernel, sc) + o.remainder.value() == o.shell, "hypergeometric reduction residual");
      c.expect(is_valid_remainder(o.remainder, echelon_data(o.kernel, sc), sc), "invalid remainder");
      ++n_red;
      Remainder s = as_remainder(RatFun(testutil::random_poly(rng, 1, 1, 0, 0, 4),
                                        testutil::small_factor(rng, sc)),
                                 o.kernel);
      EchelonData ed = echelon_data(o.kernel, sc);
      if (!is_valid_remainder(o.remainder, ed, sc) || !is_valid_remainder(s, ed, sc)) continue;
      auto L = remainder_linearization(o.remainder, s, o.kernel, sc);
      c.expect(s.value() == delta_K(L.g, o.kernel, sc) + L.t.value(), "linearization residual");
      ++n_lin;
    }
    for (int it = 0; it < 8; ++it) {
      auto co = [&](int lo, int hi) { return std::to_string(lo + int(rng() % unsigned(hi - lo + 1))); };
      std::string term = sc == SH ? "(" + co(1, 4) + "*n + " + co(1, 4) + "*k + " + co(1, 5) + ")/(" + co(1, 2) +
                                        "*n + " + co(1, 2) + "*k + " + co(1, 5) + ")*binom(n,k)"
                                  : "(" + co(1, 4) + "*x + " + co(1, 4) + "*y + " + co(1, 5) + ")/(x^" + co(1, 2) +
                                        "*y - " + co(2, 5) + ")*qbinom(n,k)";
      BivariateTerm T = compile(term, sc);
      TelescopingResult r = hypergeom_telescoping(T);
      c.expect(r.status == TelescopingStatus::Found, term + ": no telescoper");
      if (r.status != TelescopingStatus::Found) continue;
      c.expect(verify_telescoper(T, r.telescoper, *r.certificate), term + ": telescoping residual");
      ++n_tel;
    }
  }
  std::printf("    residuals: %d reductions, %d linearizations, %d telescopers\n", n_red, n_lin, n_tel);
  c.expect(n_red >= 40 && n_lin >= 10 && n_tel == 16, "too few instances");

  struct Ex {
    RatFun K;
    ShiftCase sc;
    CaseTag tag;
  };
  std::vector<Ex> exs = {
      {RatFun(y + 1), SH, CaseTag::C1_1},
      {RatFun(1), SH, CaseTag::C1_2},
      {R(2 * y + 1, 2 * y), SH, CaseTag::C1_3},
      {R(y + x, y + 1), SH, CaseTag::C1_3},
      {R(y * y, y * y + y + 1), SH, CaseTag::C1_4},
      {R(y * y, y * y + 3 * y + 1), SH, CaseTag::C1_4},
      {RatFun(1 - q * y), QC, CaseTag::C2_1},
      {RatFun(2), QC, CaseTag::C2_1},
      {R(Poly(1), q * q), QC, CaseTag::C2_2},
      {RatFun(1), QC, CaseTag::C2_2},
      {R(y + 1, q * (y + 2)), QC, CaseTag::C2_3},
      {R(y * y + 1, q * q * (y * y + 3)), QC, CaseTag::C2_3},
  };
  std::set<CaseTag> seen;
  for (auto& e : exs) {
    EchelonData ed = echelon_data(e.K, e.sc);
    seen.insert(ed.case_tag);
    c.expect(ed.case_tag == e.tag, e.K.str() + ": case tag " + case_tag_name(ed.case_tag));
    c.expect(ed.dimension == complement_dimension(e.K, e.sc), e.K.str() + ": dimension formula");
    c.expect(int(ed.complement_degrees.size()) == ed.dimension, e.K.str() + ": enumerated degrees");
    c.expect(complement_is_direct(e.K, e.sc, ed, 8), e.K.str() + ": not a direct complement");
  }
  std::printf("    case tags covered: %zu of 7\n", seen.size());
  c.expect(seen.size() == 7, "not all case tags covered");
  return c;
}

// ---- 8 ----
Check minimality(const std::string& corpus) {
  Check c;
  std::ifstream in(corpus);
  c.expect(bool(in), "cannot open " + corpus);
  std::string line;
  int fixtures = 0, checked = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++fixtures;
    FixtureOutcome f = run_fixture(line);
    c.expect(f.passed, f.name + ": " + f.detail);
    const JobReport& rep = f.report;
    if (!rep.result || rep.result->status != TelescopingStatus::Found) continue;
    const TelescopingResult& r = *rep.result;
    int rho = r.telescoper.order();
    c.expect(int(r.empty_orders.size()) == rho, f.name + ": missing empty nullspaces");
    for (int i = 0; i < rho && i < int(r.empty_orders.size()); ++i)
      c.expect(r.empty_orders[size_t(i)] == i, f.name + ": nullspace at order " + std::to_string(i));
    c.expect(r.certificate.has_value(), f.name + ": no certificate");
    if (!r.certificate) continue;
    c.expect(verify_telescoper(rep.term, r.telescoper, *r.certificate), f.name + ": verify failed");
    for (size_t i = 0; i < r.telescoper.coeffs.size(); ++i) {
      Telescoper L = r.telescoper;
      L.coeffs[i] += RatFun(1);
      c.expect(!verify_telescoper(rep.term, L, *r.certificate),
               f.name + ": perturbed coefficient " + std::to_string(i) + " still verifies");
    }
    ++checked;
  }
  std::printf("    %d fixtures, %d telescopers checked\n", fixtures, checked);
  c.expect(checked > 0, "no telescopers in corpus");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::string corpus = CTSUM_CORPUS_PATH;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--only" && i + 1 < argc)
      only = std::atoi(argv[++i]);
    else
      corpus = a;
  }
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  std::vector<Criterion> cs = {
      {1, "reduction worked examples", reduction_examples},
      {2, "linearization worked example", linearization_example},
      {3, "telescopers of worked examples", telescoper_examples},
      {4, "Stanton identity", stanton},
      {5, "benchmark orders and certificate cost", bench_orders},
      {6, "planted summability round trip", planted_summability},
      {7, "residual identities and complement dimension", identities},
      {8, "minimality over the fixture corpus", [&] { return minimality(corpus); }},
  };
  int failed = 0;
  for (auto& c : cs) {
    if (only && c.id != only) continue;
    std::printf("criterion %d: %s\n", c.id, c.name);
    std::fflush(stdout);
    double t0 = now();
    Check r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    double dt = now() - t0;
    std::printf("%s criterion %d %s (%.2f s)%s%s\n", r.ok ? "PASS" : "FAIL", c.id, c.name, dt,
                r.ok ? "" : ": ", r.detail.c_str());
    std::fflush(stdout);
    failed += !r.ok;
  }
  size_t ran = only ? 1 : cs.size();
  std::printf("%d of %zu criteria passed\n", int(ran) - failed, ran);
  return failed == 0 ? 0 : 1;
}
