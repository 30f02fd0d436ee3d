#include "ctsum/job.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace ctsum {

using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - t_).count();
    t_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
};

}  // namespace

const char* status_name(TelescopingStatus s) {
  switch (s) {
    case TelescopingStatus::Found:
      return "found";
    case TelescopingStatus::NoTelescoper:
      return "no_telescoper";
    case TelescopingStatus::OrderBoundExceeded:
      return "order_bound_exceeded";
  }
  return "unknown";
}

JobReport run_job(const JobSpec& spec) {
  JobReport rep;
  rep.spec = spec;
  SymbolTable syms{spec.params};
  Stopwatch sw;
  try {
    bool has_term = !spec.term.empty();
    bool has_q = !spec.quotient_x.empty() || !spec.quotient_y.empty();
    if (has_term == has_q)
      throw ParseError("give either a term expression or both quotients", 1, 1);
    if (has_term) {
      Expr e = parse_term_expression(spec.term, syms);
      rep.timings.push_back({"parse", sw.lap()});
      rep.term = compile_quotients(e, syms, spec.sc);
    } else {
      if (spec.quotient_x.empty() || spec.quotient_y.empty())
        throw ParseError("both --quotient-x and --quotient-y are required", 1, 1);
      Expr ex = parse_term_expression(spec.quotient_x, syms);
      Expr ey = parse_term_expression(spec.quotient_y, syms);
      rep.timings.push_back({"parse", sw.lap()});
      rep.term = {compile_rational(ex, syms, spec.sc), compile_rational(ey, syms, spec.sc), spec.sc};
      if (rep.term.fx.is_zero() || rep.term.gy.is_zero()) throw CompileError("zero quotient");
    }
    rep.timings.push_back({"compile", sw.lap()});
    TelescopingOptions opt;
    opt.max_order = spec.max_order;
    opt.want_certificate = spec.want_certificate || spec.verify;
    opt.normalize_certificate = spec.normalize_certificate;
    rep.result = hypergeom_telescoping(rep.term, opt);
    rep.timings.push_back({"telescoping", sw.lap()});
    rep.status = rep.result->status == TelescopingStatus::OrderBoundExceeded ? JobStatus::OrderBoundExceeded
                                                                              : JobStatus::Ok;
    if (spec.verify && rep.result->status == TelescopingStatus::Found) {
      rep.verified = verify_telescoper(rep.term, rep.result->telescoper, *rep.result->certificate);
      rep.timings.push_back({"verify", sw.lap()});
      if (!*rep.verified) {
        rep.status = JobStatus::InternalError;
        rep.error = "telescoper verification failed";
      }
    }
    if (!spec.want_certificate && rep.result) rep.result->certificate.reset();
  } catch (const ParseError& e) {
    rep.status = JobStatus::ParseError;
    rep.error = e.what();
  } catch (const CompileError& e) {
    rep.status = JobStatus::IncompatibleTerm;
    rep.error = e.what();
  } catch (const IncompatibleTerm& e) {
    rep.status = JobStatus::IncompatibleTerm;
    rep.error = e.what();
  } catch (const std::exception& e) {
    rep.status = JobStatus::InternalError;
    rep.error = e.what();
  }
  return rep;
}

namespace {

json report_object(const JobReport& r) {
  SymbolTable syms{r.spec.params};
  Names nm = syms.names();
  auto S = [&](const RatFun& f) { return f.str(nm); };
  json j;
  j["case"] = r.spec.sc == ShiftCase::Q ? "q" : "shift";
  json in;
  if (!r.spec.term.empty()) {
    in["term"] = r.spec.term;
  } else {
    in["quotient_x"] = r.spec.quotient_x;
    in["quotient_y"] = r.spec.quotient_y;
  }
  in["params"] = r.spec.params;
  j["input"] = in;
  j["exit_code"] = int(r.status);
  if (!r.error.empty()) j["error"] = r.error;
  if (r.result) {
    const TelescopingResult& t = *r.result;
    j["quotient_x"] = S(r.term.fx);
    j["quotient_y"] = S(r.term.gy);
    j["kernel"] = S(t.kernel);
    j["shell"] = S(t.shell);
    j["remainder"] = S(t.remainder0.value());
    j["summable"] = t.remainder0.is_zero();
    j["status"] = status_name(t.status);
    if (t.status == TelescopingStatus::Found) {
      json tel;
      tel["order"] = t.telescoper.order();
      json cs = json::array();
      for (auto& c : t.telescoper.coeffs) cs.push_back(S(c));
      tel["coeffs"] = cs;
      j["telescoper"] = tel;
    } else {
      j["telescoper"] = nullptr;
    }
    if (t.certificate) {
      json c;
      c["shell"] = S(t.certificate->shell);
      if (t.certificate->g) {
        c["form"] = "normalized";
        c["g"] = S(*t.certificate->g);
      } else {
        c["form"] = "tagged";
        json terms = json::array();
        for (auto& [l, g] : t.certificate->tagged) terms.push_back({{"coeff", S(l)}, {"g", S(g)}});
        c["terms"] = terms;
      }
      j["certificate"] = c;
    }
    if (r.verified) j["verified"] = *r.verified;
  }
  json tm = json::object();
  for (auto& [k, v] : r.timings) tm[k] = v;
  j["timings"] = tm;
  return j;
}

}  // namespace

std::string report_json(const JobReport& r, int indent) { return report_object(r).dump(indent); }

std::string report_text(const JobReport& r) {
  std::ostringstream o;
  if (!r.error.empty()) o << "error: " << r.error << "\n";
  if (!r.result) return o.str();
  Names nm = SymbolTable{r.spec.params}.names();
  const TelescopingResult& t = *r.result;
  o << "kernel:     " << t.kernel.str(nm) << "\n";
  o << "shell:      " << t.shell.str(nm) << "\n";
  o << "remainder:  " << t.remainder0.value().str(nm) << "\n";
  o << "summable:   " << (t.remainder0.is_zero() ? "yes" : "no") << "\n";
  o << "status:     " << status_name(t.status) << "\n";
  if (t.status == TelescopingStatus::Found) {
    o << "order:      " << t.telescoper.order() << "\n";
    for (size_t i = 0; i < t.telescoper.coeffs.size(); ++i)
      o << "  S^" << i << ": " << t.telescoper.coeffs[i].str(nm) << "\n";
  }
  if (t.certificate) {
    if (t.certificate->g) {
      o << "certificate: (" << t.certificate->g->str(nm) << ") * T / (" << t.certificate->shell.str(nm) << ")\n";
    } else {
      o << "certificate: sum of " << t.certificate->tagged.size() << " tagged terms times T / ("
        << t.certificate->shell.str(nm) << ")\n";
    }
  }
  if (r.verified) o << "verified:   " << (*r.verified ? "yes" : "no") << "\n";
  return o.str();
}

// --- benchmark family ---------------------------------------------------------

std::string bench_term(int d, int alpha, int lambda, int mu, uint64_t seed) {
  if (d < 1 || alpha < 1 || lambda < 0 || mu < 0) throw std::invalid_argument("invalid benchmark parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-9, 9);
  int a, b, c;
  do {
    a = coef(rng);
    b = coef(rng);
    c = coef(rng);
  } while (a == 0 && b == 0);
  std::vector<int> p(size_t(d) + 1);
  do {
    for (auto& v : p) v = coef(rng);
  } while (p.front() == 0 || p.back() == 0);
  // sum of c_i * m_i with an empty m_i standing for 1
  auto linear = [](const std::vector<std::pair<int, std::string>>& terms) {
    std::string s;
    for (auto& [ci, m] : terms) {
      if (ci == 0) continue;
      std::string t = std::to_string(std::abs(ci));
      if (!m.empty()) t = std::abs(ci) == 1 ? m : t + "*" + m;
      s += s.empty() ? (ci < 0 ? "-" : "") + t : (ci < 0 ? " - " : " + ") + t;
    }
    return "(" + s + ")";
  };
  auto p_at = [&](int shift) {
    std::string z = shift == 0 ? "x*y" : shift == 1 ? "q*x*y" : "q^" + std::to_string(shift) + "*x*y";
    std::vector<std::pair<int, std::string>> terms;
    for (int i = 0; i <= d; ++i)
      terms.push_back({p[size_t(i)], i == 0 ? "" : i == 1 ? z : "(" + z + ")^" + std::to_string(i)});
    return linear(terms);
  };
  auto idx = [](int coeff, const char* v) { return coeff == 1 ? std::string(v) : std::to_string(coeff) + "*" + v; };
  return linear({{a, "x"}, {b, "y"}, {c, ""}}) + "/(" + p_at(0) + "*" + p_at(lambda) + "*" + p_at(mu) +
         ")*qpochhammer(q, " + idx(2 * alpha, "n") + " + k)/qpochhammer(q, n + " + idx(alpha, "k") + ")";
}

BenchRow run_bench(int d, int alpha, int lambda, int mu, uint64_t seed, int repeats) {
  BenchRow row{d, alpha, lambda, mu, seed, bench_term(d, alpha, lambda, mu, seed)};
  SymbolTable syms;
  BivariateTerm T = compile_quotients(parse_term_expression(row.term, syms), syms, ShiftCase::Q);
  TelescopingOptions opt;
  opt.max_order = 12;
  TelescopingResult with, without;
  row.seconds_with_certificate = row.seconds_without_certificate = 1e300;
  for (int i = 0; i < std::max(repeats, 1); ++i) {
    Stopwatch sw;
    opt.want_certificate = false;
    without = hypergeom_telescoping(T, opt);
    row.seconds_without_certificate = std::min(row.seconds_without_certificate, sw.lap());
    opt.want_certificate = true;
    with = hypergeom_telescoping(T, opt);
    row.seconds_with_certificate = std::min(row.seconds_with_certificate, sw.lap());
  }
  if (without.status != TelescopingStatus::Found || with.telescoper.coeffs != without.telescoper.coeffs)
    throw std::runtime_error("benchmark instance produced inconsistent results");
  row.order = without.telescoper.order();
  return row;
}

std::string bench_json(const std::vector<BenchRow>& rows) {
  json a = json::array();
  for (auto& r : rows)
    a.push_back({{"d", r.d},
                 {"alpha", r.alpha},
                 {"lambda", r.lambda},
                 {"mu", r.mu},
                 {"seed", r.seed},
                 {"term", r.term},
                 {"order", r.order},
                 {"seconds_with_certificate", r.seconds_with_certificate},
                 {"seconds_without_certificate", r.seconds_without_certificate}});
  return a.dump(2);
}

// --- fixture corpus -----------------------------------------------------------

namespace {

JobSpec job_from(const json& s) {
  JobSpec spec;
  std::string c = s.value("case", "shift");
  if (c != "shift" && c != "q") throw std::invalid_argument("case must be shift or q");
  spec.sc = c == "q" ? ShiftCase::Q : ShiftCase::Shift;
  spec.params = s.value("params", std::vector<std::string>{});
  spec.term = s.value("term", "");
  spec.quotient_x = s.value("quotient_x", "");
  spec.quotient_y = s.value("quotient_y", "");
  spec.max_order = s.value("max_order", 12);
  spec.want_certificate = s.value("certificate", true);
  spec.normalize_certificate = s.value("certificate_normalized", false);
  spec.verify = s.value("verify", spec.want_certificate);
  return spec;
}

bool same_up_to_unit(const std::vector<RatFun>& a, const std::vector<RatFun>& b) {
  if (a.size() != b.size() || a.empty()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] * b.back() != b[i] * a.back()) return false;
  return true;
}

}  // namespace

JobSpec job_from_json(const std::string& spec_json) { return job_from(json::parse(spec_json)); }

FixtureOutcome run_fixture(const std::string& line) {
  FixtureOutcome out;
  json rec = json::parse(line);
  out.name = rec.value("name", "");
  JobSpec spec = job_from(rec.at("spec"));
  out.report = run_job(spec);
  const json& ex = rec.at("expected");
  std::vector<std::string> bad;
  const JobReport& r = out.report;
  if (ex.contains("exit_code") && ex["exit_code"].get<int>() != int(r.status))
    bad.push_back("exit code " + std::to_string(int(r.status)));
  if (!ex.contains("exit_code") && r.status != JobStatus::Ok) bad.push_back("job failed: " + r.error);
  if (r.result) {
    const TelescopingResult& t = *r.result;
    if (ex.contains("status") && ex["status"].get<std::string>() != status_name(t.status))
      bad.push_back(std::string("status ") + status_name(t.status));
    if (ex.contains("summable") && ex["summable"].get<bool>() != t.remainder0.is_zero()) bad.push_back("summability");
    if (ex.contains("order") && ex["order"].get<int>() != t.telescoper.order())
      bad.push_back("order " + std::to_string(t.telescoper.order()));
    if (ex.contains("telescoper")) {
      SymbolTable syms{spec.params};
      std::vector<RatFun> want;
      for (auto& c : ex["telescoper"]) want.push_back(parse_rational(c.get<std::string>(), syms, spec.sc));
      if (!same_up_to_unit(t.telescoper.coeffs, want)) bad.push_back("telescoper differs");
    }
    if (ex.contains("kernel")) {
      SymbolTable syms{spec.params};
      if (parse_rational(ex["kernel"].get<std::string>(), syms, spec.sc) != t.kernel) bad.push_back("kernel differs");
    }
    if (r.verified && !*r.verified) bad.push_back("verification failed");
  } else if (!ex.contains("exit_code")) {
    bad.push_back("no result");
  }
  out.passed = bad.empty();
  for (auto& b : bad) out.detail += (out.detail.empty() ? "" : "; ") + b;
  return out;
}

std::vector<FixtureOutcome> run_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<FixtureOutcome> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(run_fixture(line));
  }
  return out;
}

}  // namespace ctsum
