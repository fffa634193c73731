/* Exercises the C interface from C. */
#include <stdio.h>
#include <string.h>

#include "ppl/ppl.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);  \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  ppl_algebra* alg = NULL;
  EXPECT(ppl_algebra_new("B2", &alg) == PPL_OK);
  int rank = 0, dim = 0, h = 0, hv = 0;
  EXPECT(ppl_algebra_info(alg, &rank, &dim, &h, &hv) == PPL_OK);
  EXPECT(rank == 2 && dim == 10 && h == 4 && hv == 3);
  ppl_algebra_free(alg);

  EXPECT(ppl_algebra_new("Q7", &alg) != PPL_OK);
  EXPECT(strlen(ppl_last_error()) > 0);

  ppl_pencil* p = NULL;
  EXPECT(ppl_pencil_load("kdv", &p) == PPL_OK);
  size_t n = 0;
  EXPECT(ppl_pencil_fields(p, &n) == PPL_OK && n == 3);
  int ok1 = 0, ok2 = 0;
  EXPECT(ppl_pencil_check_exact(p, &ok1, &ok2) == PPL_OK && ok1 && ok2);

  ppl_reduced* r = NULL;
  EXPECT(ppl_reduce(p, 24, &r) == PPL_OK);
  int fac = 0, lf = 0;
  char* det = NULL;
  EXPECT(ppl_reduced_schur(r, &fac, &lf, &det) == PPL_OK);
  EXPECT(fac && lf && det && strcmp(det, "4") == 0);
  ppl_string_free(det);
  char* text = NULL;
  EXPECT(ppl_reduced_render(r, PPL_FORMAT_TEXT, &text) == PPL_OK);
  EXPECT(text && strstr(text, "1/2*eps^2*D^3") != NULL);
  ppl_string_free(text);
  ppl_reduced_free(r);

  ppl_sample_options so;
  ppl_sample_options_default(&so);
  char* json = NULL;
  EXPECT(ppl_invariants(p, &so, PPL_FORMAT_JSON, &json) == PPL_OK);
  EXPECT(json && strstr(json, "\"c_exact\": \"1/24\"") != NULL);
  ppl_string_free(json);
  so.samples = 0;
  EXPECT(ppl_invariants(p, &so, PPL_FORMAT_JSON, &json) == PPL_ERR_USAGE);
  ppl_pencil_free(p);

  EXPECT(ppl_pencil_load("nope", &p) == PPL_ERR_LOOKUP);
  EXPECT(ppl_pencil_from_json("{\"names\": [\"u\"], \"operator\": [[\"eps^-2*D\"]]}", &p) == PPL_ERR_GRADING);
  EXPECT(ppl_pencil_from_json("{\"names\": [\"u\", \"v\"], \"operator\": [[\"2*D\", \"u*D\"], [\"D\", \"2*D\"]]}",
                              &p) == PPL_ERR_VALIDATION);
  EXPECT(strstr(ppl_last_error(), "(1,2)/(2,1)") != NULL);
  EXPECT(ppl_pencil_from_json("{", &p) == PPL_ERR_PARSE);
  EXPECT(ppl_pencil_from_json("{\"algebra\": \"A1\", \"A\": [0, 0, 1], \"bogus\": 1}", &p) == PPL_ERR_PARSE);
  EXPECT(strstr(ppl_last_error(), "/bogus") != NULL);

  int passed = 0;
  char* report = NULL;
  EXPECT(ppl_verify("kdv", 6, NULL, PPL_FORMAT_JSON, &report, &passed) == PPL_OK && passed);
  ppl_string_free(report);
  EXPECT(ppl_verify("no-such-suite", 6, NULL, PPL_FORMAT_TEXT, &report, &passed) == PPL_ERR_LOOKUP);
  EXPECT(ppl_pencil_load(NULL, &p) == PPL_ERR_USAGE);

  ppl_format f;
  EXPECT(ppl_parse_format("latex", &f) == PPL_OK && f == PPL_FORMAT_LATEX);
  EXPECT(ppl_parse_format("pdf", &f) == PPL_ERR_USAGE);

  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi_test: ok\n");
  return 0;
}
