#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctsum/expr.hpp"

namespace ctsum {

struct JobSpec {
  ShiftCase sc = ShiftCase::Shift;
  std::vector<std::string> params;
  std::string term;  // either a term expression
  std::string quotient_x, quotient_y;  // or the two quotients
  int max_order = 12;
  bool want_certificate = true;
  bool normalize_certificate = false;
  bool verify = false;
};

// Process exit codes.
enum class JobStatus { Ok = 0, ParseError = 2, IncompatibleTerm = 3, OrderBoundExceeded = 4, InternalError = 5 };

struct JobReport {
  JobStatus status = JobStatus::InternalError;
  std::string error;
  JobSpec spec;
  BivariateTerm term;
  std::optional<TelescopingResult> result;
  std::optional<bool> verified;
  std::vector<std::pair<std::string, double>> timings;  // seconds
};

JobReport run_job(const JobSpec& spec);
std::string report_json(const JobReport& r, int indent = 2);
std::string report_text(const JobReport& r);
const char* status_name(TelescopingStatus s);

// q-case family f(q^n, q^k) / g(q^(n+k)) * (q;q)_(2 alpha n + k) / (q;q)_(n + alpha k)
// with deg f = 1 and g = p * sigma_z^lambda(p) * sigma_z^mu(p), deg p = d.
std::string bench_term(int d, int alpha, int lambda, int mu, uint64_t seed);

struct BenchRow {
  int d, alpha, lambda, mu;
  uint64_t seed;
  std::string term;
  int order = -1;
  double seconds_with_certificate = 0, seconds_without_certificate = 0;
};
// Times are the minimum over `repeats` runs.
BenchRow run_bench(int d, int alpha, int lambda, int mu, uint64_t seed, int repeats = 1);
std::string bench_json(const std::vector<BenchRow>& rows);

// Line-delimited fixture records {name, spec, expected}.
struct FixtureOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
  JobReport report;
};
JobSpec job_from_json(const std::string& spec_json);
std::vector<FixtureOutcome> run_corpus(const std::string& path);
FixtureOutcome run_fixture(const std::string& jsonl_line);

}  // namespace ctsum
