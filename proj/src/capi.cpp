#include <cstring>
#include <string>

#include "ctsum/ctsum.h"
#include "ctsum/job.hpp"
#include "json.hpp"

struct ctsum_job {
  ctsum::JobSpec spec;
};

struct ctsum_result {
  ctsum::JobReport report;
  std::string json, text;
};

namespace {

thread_local std::string g_error;

ctsum_status fail(ctsum_status s, const std::string& msg) {
  g_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
ctsum_status guarded(F&& f) {
  try {
    g_error.clear();
    return f();
  } catch (const std::invalid_argument& e) {
    return fail(CTSUM_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CTSUM_INTERNAL_ERROR, e.what());
  }
}

}  // namespace

extern "C" {

const char* ctsum_version(void) { return "1.0.0"; }

const char* ctsum_last_error(void) { return g_error.c_str(); }

ctsum_job* ctsum_job_new(void) {
  try {
    return new ctsum_job;
  } catch (...) {
    return nullptr;
  }
}

void ctsum_job_free(ctsum_job* job) { delete job; }

ctsum_status ctsum_job_set_case(ctsum_job* job, ctsum_case c) {
  if (!job || (c != CTSUM_SHIFT && c != CTSUM_Q)) return fail(CTSUM_INVALID_ARGUMENT, "invalid case");
  job->spec.sc = c == CTSUM_Q ? ctsum::ShiftCase::Q : ctsum::ShiftCase::Shift;
  return CTSUM_OK;
}

ctsum_status ctsum_job_add_param(ctsum_job* job, const char* name) {
  if (!job || !name) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    job->spec.params.emplace_back(name);
    return CTSUM_OK;
  });
}

ctsum_status ctsum_job_set_term(ctsum_job* job, const char* expr) {
  if (!job || !expr) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    job->spec.term = expr;
    return CTSUM_OK;
  });
}

ctsum_status ctsum_job_set_quotients(ctsum_job* job, const char* quotient_x, const char* quotient_y) {
  if (!job || !quotient_x || !quotient_y) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    job->spec.quotient_x = quotient_x;
    job->spec.quotient_y = quotient_y;
    return CTSUM_OK;
  });
}

ctsum_status ctsum_job_set_max_order(ctsum_job* job, int max_order) {
  if (!job || max_order < 0) return fail(CTSUM_INVALID_ARGUMENT, "max order must be nonnegative");
  job->spec.max_order = max_order;
  return CTSUM_OK;
}

ctsum_status ctsum_job_set_certificate(ctsum_job* job, ctsum_certificate_mode mode) {
  if (!job) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  switch (mode) {
    case CTSUM_CERTIFICATE_NONE:
      job->spec.want_certificate = false;
      job->spec.normalize_certificate = false;
      return CTSUM_OK;
    case CTSUM_CERTIFICATE_TAGGED:
      job->spec.want_certificate = true;
      job->spec.normalize_certificate = false;
      return CTSUM_OK;
    case CTSUM_CERTIFICATE_NORMALIZED:
      job->spec.want_certificate = true;
      job->spec.normalize_certificate = true;
      return CTSUM_OK;
  }
  return fail(CTSUM_INVALID_ARGUMENT, "invalid certificate mode");
}

ctsum_status ctsum_job_set_verify(ctsum_job* job, int verify) {
  if (!job) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  job->spec.verify = verify != 0;
  return CTSUM_OK;
}

ctsum_status ctsum_run(const ctsum_job* job, ctsum_result** out) {
  if (!job || !out) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* r = new ctsum_result;
    r->report = ctsum::run_job(job->spec);
    r->json = ctsum::report_json(r->report);
    r->text = ctsum::report_text(r->report);
    *out = r;
    auto s = static_cast<ctsum_status>(r->report.status);
    if (s != CTSUM_OK) g_error = r->report.error;
    return s;
  });
}

void ctsum_result_free(ctsum_result* r) { delete r; }

ctsum_status ctsum_result_status(const ctsum_result* r) {
  return r ? static_cast<ctsum_status>(r->report.status) : CTSUM_INVALID_ARGUMENT;
}

int ctsum_result_order(const ctsum_result* r) {
  if (!r || !r->report.result || r->report.result->status != ctsum::TelescopingStatus::Found) return -1;
  return r->report.result->telescoper.order();
}

int ctsum_result_summable(const ctsum_result* r) {
  return r && r->report.result && r->report.result->remainder0.is_zero() ? 1 : 0;
}

const char* ctsum_result_json(const ctsum_result* r) { return r ? r->json.c_str() : ""; }

const char* ctsum_result_text(const ctsum_result* r) { return r ? r->text.c_str() : ""; }

ctsum_status ctsum_bench_term(int d, int alpha, int lambda, int mu, uint64_t seed, char** out) {
  if (!out) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(ctsum::bench_term(d, alpha, lambda, mu, seed));
    return CTSUM_OK;
  });
}

ctsum_status ctsum_bench_run(int d, int alpha, int lambda, int mu, uint64_t seed, char** out) {
  if (!out) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto row = ctsum::run_bench(d, alpha, lambda, mu, seed);
    *out = dup(nlohmann::json::parse(ctsum::bench_json({row}))[0].dump(2));
    return CTSUM_OK;
  });
}

ctsum_status ctsum_run_corpus(const char* path, char** out) {
  if (!path || !out) return fail(CTSUM_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto res = ctsum::run_corpus(path);
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    bool all = true;
    for (auto& f : res) {
      all = all && f.passed;
      nlohmann::ordered_json o = {{"name", f.name}, {"passed", f.passed}};
      if (!f.detail.empty()) o["detail"] = f.detail;
      if (f.report.result && f.report.result->status == ctsum::TelescopingStatus::Found)
        o["order"] = f.report.result->telescoper.order();
      a.push_back(o);
    }
    *out = dup(nlohmann::ordered_json{{"total", res.size()}, {"passed", all}, {"fixtures", a}}.dump(2));
    return all ? CTSUM_OK : fail(CTSUM_INTERNAL_ERROR, "some fixtures failed");
  });
}

void ctsum_string_free(char* s) { std::free(s); }

}  // extern "C"
