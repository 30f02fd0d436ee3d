#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctsum/ctsum.h"

namespace {

int report_failure(ctsum_status s) {
  std::cerr << "ctsum: " << ctsum_last_error() << "\n";
  return int(s);
}

// "1,1,1,5" -> {1, 1, 1, 5}
bool parse_bench(const std::string& s, int out[4]) {
  std::stringstream ss(s);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 4) return false;
    try {
      size_t used = 0;
      out[i++] = std::stoi(part, &used);
      if (used != part.size()) return false;
    } catch (...) {
      return false;
    }
  }
  return i == 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Creative telescoping for hypergeometric and q-hypergeometric terms"};
  std::string sc = "shift", term, qx, qy, bench, corpus;
  std::vector<std::string> params;
  int max_order = 12;
  uint64_t seed = 1;
  bool no_cert = false, normalized = false, as_json = false, verify = false;
  app.add_option("--case", sc, "shift or q")->check(CLI::IsMember({"shift", "q"}));
  app.add_option("--term", term, "term expression in n and k");
  app.add_option("--quotient-x", qx, "sigma_x quotient T(n+1,k)/T(n,k)");
  app.add_option("--quotient-y", qy, "sigma_y quotient T(n,k+1)/T(n,k)");
  app.add_option("--param", params, "declare a parameter (repeatable)");
  app.add_option("--max-order", max_order, "largest telescoper order tried")->check(CLI::NonNegativeNumber);
  app.add_flag("--no-certificate", no_cert, "skip the certificate");
  app.add_flag("--certificate-normalized", normalized, "return the certificate as a single fraction");
  app.add_flag("--json", as_json, "JSON report");
  app.add_flag("--verify", verify, "check the telescoping identity");
  app.add_option("--bench", bench, "run the q-benchmark family instance d,alpha,lambda,mu");
  app.add_option("--seed", seed, "seed for --bench");
  app.add_option("--corpus", corpus, "run a line-delimited fixture file");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return CTSUM_PARSE_ERROR;
  }
  if (no_cert && normalized) {
    std::cerr << "ctsum: --no-certificate and --certificate-normalized are exclusive\n";
    return CTSUM_PARSE_ERROR;
  }

  if (!corpus.empty()) {
    char* out = nullptr;
    ctsum_status s = ctsum_run_corpus(corpus.c_str(), &out);
    if (out) {
      std::cout << out << "\n";
      ctsum_string_free(out);
    } else {
      return report_failure(s);
    }
    return int(s);
  }

  if (!bench.empty()) {
    int b[4];
    if (!parse_bench(bench, b)) {
      std::cerr << "ctsum: --bench expects d,alpha,lambda,mu\n";
      return CTSUM_PARSE_ERROR;
    }
    char* out = nullptr;
    ctsum_status s = ctsum_bench_run(b[0], b[1], b[2], b[3], seed, &out);
    if (s != CTSUM_OK) return report_failure(s == CTSUM_INVALID_ARGUMENT ? CTSUM_PARSE_ERROR : s);
    std::cout << out << "\n";
    ctsum_string_free(out);
    return 0;
  }

  ctsum_job* job = ctsum_job_new();
  if (!job) return CTSUM_INTERNAL_ERROR;
  ctsum_job_set_case(job, sc == "q" ? CTSUM_Q : CTSUM_SHIFT);
  for (auto& p : params) ctsum_job_add_param(job, p.c_str());
  if (!term.empty()) ctsum_job_set_term(job, term.c_str());
  if (!qx.empty() || !qy.empty()) ctsum_job_set_quotients(job, qx.c_str(), qy.c_str());
  ctsum_job_set_max_order(job, max_order);
  ctsum_job_set_certificate(job, no_cert      ? CTSUM_CERTIFICATE_NONE
                                 : normalized ? CTSUM_CERTIFICATE_NORMALIZED
                                              : CTSUM_CERTIFICATE_TAGGED);
  ctsum_job_set_verify(job, verify);
  ctsum_result* res = nullptr;
  ctsum_status s = ctsum_run(job, &res);
  ctsum_job_free(job);
  if (!res) return report_failure(s == CTSUM_INVALID_ARGUMENT ? CTSUM_PARSE_ERROR : s);
  if (as_json) {
    std::cout << ctsum_result_json(res) << "\n";
  } else {
    std::cout << ctsum_result_text(res);
  }
  ctsum_result_free(res);
  return int(s);
}
