#pragma once

#include <string>
#include <vector>

#include "ppl/invariants.hpp"
#include "ppl/io.hpp"
#include "ppl/reduction.hpp"

namespace ppl {

enum class Emit { Text, Json, Latex };
Emit parse_emit(std::string_view s);

// Command reports. Every JSON document carries "schema": "ppl/1".
Json algebra_report(const LieAlg& alg);
Json pencil_report(const BuiltinPencil& b);
Json reduce_report(const BuiltinPencil& b, int max_order);
// Reduces first when the gauge eliminates fields.
Json invariants_report(const BuiltinPencil& b, const SampleOptions& opt, int max_order = 24);

struct Check {
  std::string name;
  bool pass = false;
  bool finding = false;  // informational: recorded, never fails the suite
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;
  bool passed() const;
};

struct SuiteOptions {
  int max_rank = 6;  // table1
  SampleOptions sampling;
};

const std::vector<std::string>& suite_names();
// Unknown names raise a lookup error.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);
Json to_json(const SuiteResult& r);

// Text and LaTeX renderings of the command reports above.
std::string render(const Json& report, Emit emit);

}  // namespace ppl
