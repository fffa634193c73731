#include "ppl/ppl.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "ppl/error.hpp"
#include "ppl/report.hpp"

struct ppl_algebra {
  ppl::LieAlg alg;
};

struct ppl_pencil {
  ppl::BuiltinPencil b;
};

struct ppl_reduced {
  ppl::Json report;
};

namespace {

thread_local std::string g_last_error;

ppl_status status_of(ppl::ErrorKind k) {
  using ppl::ErrorKind;
  switch (k) {
    case ErrorKind::Usage: return PPL_ERR_USAGE;
    case ErrorKind::Precondition: return PPL_ERR_PRECONDITION;
    case ErrorKind::Lookup: return PPL_ERR_LOOKUP;
    case ErrorKind::Parse: return PPL_ERR_PARSE;
    case ErrorKind::Validation: return PPL_ERR_VALIDATION;
    case ErrorKind::Integrity: return PPL_ERR_INTEGRITY;
    case ErrorKind::Singular: return PPL_ERR_SINGULAR;
    case ErrorKind::NonTermination: return PPL_ERR_NON_TERMINATION;
    case ErrorKind::Semisimplicity: return PPL_ERR_SEMISIMPLICITY;
    case ErrorKind::NoDispersionlessLimit: return PPL_ERR_NO_DISPERSIONLESS_LIMIT;
    case ErrorKind::Grading: return PPL_ERR_GRADING;
  }
  return PPL_ERR_INTERNAL;
}

template <class F>
ppl_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return PPL_OK;
  } catch (const ppl::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PPL_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PPL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PPL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PPL_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) ppl::fail(ppl::ErrorKind::Usage, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ppl::Emit emit_of(ppl_format f) {
  switch (f) {
    case PPL_FORMAT_TEXT: return ppl::Emit::Text;
    case PPL_FORMAT_JSON: return ppl::Emit::Json;
    case PPL_FORMAT_LATEX: return ppl::Emit::Latex;
  }
  ppl::fail(ppl::ErrorKind::Usage, "unknown output format " + std::to_string(static_cast<int>(f)));
}

ppl::SampleOptions sampling(const ppl_sample_options* opt) {
  ppl::SampleOptions so;
  if (!opt) return so;
  if (opt->samples < 1) ppl::fail(ppl::ErrorKind::Usage, "samples must be at least 1");
  if (opt->order < 2 || opt->order > 16) ppl::fail(ppl::ErrorKind::Usage, "order must be in [2, 16]");
  if (!(opt->tol > 0)) ppl::fail(ppl::ErrorKind::Usage, "tolerance must be positive");
  so.samples = opt->samples;
  so.seed = opt->seed;
  so.order = opt->order;
  so.tol = opt->tol;
  return so;
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += x + "\n";
  return s;
}

}  // namespace

extern "C" {

const char* ppl_version(void) { return "1.0.0"; }

const char* ppl_last_error(void) { return g_last_error.c_str(); }

const char* ppl_status_name(ppl_status s) {
  switch (s) {
    case PPL_OK: return "ok";
    case PPL_ERR_USAGE: return "usage";
    case PPL_ERR_PRECONDITION: return "precondition";
    case PPL_ERR_LOOKUP: return "lookup";
    case PPL_ERR_PARSE: return "parse";
    case PPL_ERR_VALIDATION: return "validation";
    case PPL_ERR_INTEGRITY: return "integrity";
    case PPL_ERR_SINGULAR: return "singular";
    case PPL_ERR_NON_TERMINATION: return "non-termination";
    case PPL_ERR_SEMISIMPLICITY: return "semisimplicity";
    case PPL_ERR_NO_DISPERSIONLESS_LIMIT: return "no-dispersionless-limit";
    case PPL_ERR_GRADING: return "grading";
    case PPL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void ppl_string_free(char* s) { std::free(s); }

ppl_status ppl_set_digits(int digits) {
  return guard([&] { ppl::set_working_digits(digits); });
}

int ppl_get_digits(void) { return ppl::working_digits(); }

ppl_status ppl_parse_format(const char* name, ppl_format* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    switch (ppl::parse_emit(name)) {
      case ppl::Emit::Text: *out = PPL_FORMAT_TEXT; break;
      case ppl::Emit::Json: *out = PPL_FORMAT_JSON; break;
      case ppl::Emit::Latex: *out = PPL_FORMAT_LATEX; break;
    }
  });
}

ppl_status ppl_algebra_new(const char* descriptor, ppl_algebra** out) {
  return guard([&] {
    need(descriptor, "descriptor");
    need(out, "out");
    *out = new ppl_algebra{ppl::build_algebra(std::string_view(descriptor))};
  });
}

void ppl_algebra_free(ppl_algebra* alg) { delete alg; }

ppl_status ppl_algebra_info(const ppl_algebra* a, int* rank, int* dim, int* h, int* h_vee) {
  return guard([&] {
    need(a, "algebra");
    if (rank) *rank = a->alg.rank;
    if (dim) *dim = a->alg.dim;
    if (h) *h = a->alg.h;
    if (h_vee) *h_vee = a->alg.h_vee;
  });
}

ppl_status ppl_algebra_render(const ppl_algebra* a, ppl_format format, char** out) {
  return guard([&] {
    need(a, "algebra");
    need(out, "out");
    *out = dup(ppl::render(ppl::algebra_report(a->alg), emit_of(format)));
  });
}

ppl_status ppl_builtin_names(char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(joined(ppl::builtin_names()));
  });
}

ppl_status ppl_pencil_load(const char* target, ppl_pencil** out) {
  return guard([&] {
    need(target, "target");
    need(out, "out");
    *out = new ppl_pencil{ppl::resolve_pencil(target)};
  });
}

ppl_status ppl_pencil_from_json(const char* json, ppl_pencil** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    ppl::Json j;
    try {
      j = ppl::Json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      ppl::fail(ppl::ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
    }
    *out = new ppl_pencil{ppl::load_pencil_json(j)};
  });
}

void ppl_pencil_free(ppl_pencil* p) { delete p; }

ppl_status ppl_pencil_set_gauge_file(ppl_pencil* p, const char* path) {
  return guard([&] {
    need(p, "pencil");
    need(path, "path");
    ppl::GaugeSpec q = ppl::load_gauge_file(path);
    q.validate(p->b.pencil.fields());
    p->b.gauge = q;
  });
}

ppl_status ppl_pencil_fields(const ppl_pencil* p, size_t* out) {
  return guard([&] {
    need(p, "pencil");
    need(out, "out");
    *out = p->b.pencil.fields();
  });
}

ppl_status ppl_pencil_render(const ppl_pencil* p, ppl_format format, char** out) {
  return guard([&] {
    need(p, "pencil");
    need(out, "out");
    *out = dup(ppl::render(ppl::pencil_report(p->b), emit_of(format)));
  });
}

ppl_status ppl_pencil_check_exact(const ppl_pencil* p, int* p1_ok, int* p2_ok) {
  return guard([&] {
    need(p, "pencil");
    auto r = ppl::check_exact(p->b.pencil);
    if (p1_ok) *p1_ok = r.p1_ok();
    if (p2_ok) *p2_ok = r.p2_ok();
  });
}

ppl_status ppl_reduce(const ppl_pencil* p, int max_order, ppl_reduced** out) {
  return guard([&] {
    need(p, "pencil");
    need(out, "out");
    if (max_order < 0) ppl::fail(ppl::ErrorKind::Usage, "max-order must be non-negative");
    *out = new ppl_reduced{ppl::reduce_report(p->b, max_order)};
  });
}

void ppl_reduced_free(ppl_reduced* r) { delete r; }

ppl_status ppl_reduced_render(const ppl_reduced* r, ppl_format format, char** out) {
  return guard([&] {
    need(r, "reduced");
    need(out, "out");
    *out = dup(ppl::render(r->report, emit_of(format)));
  });
}

ppl_status ppl_reduced_schur(const ppl_reduced* r, int* factorizes, int* lambda_free, char** det_delta) {
  return guard([&] {
    need(r, "reduced");
    const auto& s = r->report.at("schur");
    if (factorizes) *factorizes = s.at("factorizes").get<bool>();
    if (lambda_free) *lambda_free = s.at("lambda_free").get<bool>();
    if (det_delta) *det_delta = dup(s.at("det_delta_text").get<std::string>());
  });
}

void ppl_sample_options_default(ppl_sample_options* opt) {
  if (!opt) return;
  ppl::SampleOptions so;
  opt->samples = so.samples;
  opt->seed = so.seed;
  opt->order = so.order;
  opt->tol = so.tol;
  opt->max_order = 24;
}

ppl_status ppl_invariants(const ppl_pencil* p, const ppl_sample_options* opt, ppl_format format, char** out) {
  return guard([&] {
    need(p, "pencil");
    need(out, "out");
    int max_order = opt ? opt->max_order : 24;
    *out = dup(ppl::render(ppl::invariants_report(p->b, sampling(opt), max_order), emit_of(format)));
  });
}

ppl_status ppl_suite_names(char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(joined(ppl::suite_names()));
  });
}

ppl_status ppl_verify(const char* suite, int max_rank, const ppl_sample_options* opt, ppl_format format, char** out,
                      int* passed) {
  return guard([&] {
    need(suite, "suite");
    need(out, "out");
    ppl::SuiteOptions so;
    so.max_rank = max_rank;
    so.sampling = sampling(opt);
    std::vector<std::string> names;
    if (std::string(suite) == "all")
      names = ppl::suite_names();
    else
      names.push_back(suite);
    ppl::Json j;
    j["schema"] = ppl::kSchema;
    j["command"] = "verify";
    j["suites"] = ppl::Json::array();
    bool ok = true;
    for (const auto& n : names) {
      auto r = ppl::run_suite(n, so);
      ok = ok && r.passed();
      j["suites"].push_back(ppl::to_json(r));
    }
    j["passed"] = ok;
    if (passed) *passed = ok;
    *out = dup(ppl::render(j, emit_of(format)));
  });
}

}  // extern "C"
