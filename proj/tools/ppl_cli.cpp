// ppl: command-line front end over the C API.
//
// Exit status: 0 success, 1 verification or computation failure, 2 usage,
// lookup or input errors.
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "ppl/ppl.h"

namespace {

struct Failure {
  ppl_status status;
};

int exit_code(ppl_status s) {
  switch (s) {
    case PPL_OK: return 0;
    case PPL_ERR_USAGE:
    case PPL_ERR_LOOKUP:
    case PPL_ERR_PARSE:
    case PPL_ERR_VALIDATION:
    case PPL_ERR_GRADING: return 2;
    default: return 1;
  }
}

void check(ppl_status s) {
  if (s != PPL_OK) throw Failure{s};
}

struct Str {
  char* p = nullptr;
  ~Str() { ppl_string_free(p); }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

using Pencil = Handle<ppl_pencil, ppl_pencil_free>;
using Reduced = Handle<ppl_reduced, ppl_reduced_free>;
using Algebra = Handle<ppl_algebra, ppl_algebra_free>;

void print(const Str& s) {
  std::fputs(s.p, stdout);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local Poisson pencils: construction, bi-Hamiltonian reduction and invariants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ppl_version()));

  std::string emit = "text";
  std::string target;
  std::string gauge_file;
  int max_order = 24;
  int digits = 0;
  ppl_sample_options so;
  ppl_sample_options_default(&so);

  auto emit_opt = [&](CLI::App* c) {
    c->add_option("--emit", emit, "Output format")->check(CLI::IsMember({"json", "latex", "text"}));
  };
  auto digits_opt = [&](CLI::App* c) {
    c->add_option("--digits", digits, "Working precision in decimal digits (default: $PPL_DIGITS or 50)")
        ->check(CLI::Range(20, 1000));
  };
  auto sample_opts = [&](CLI::App* c) {
    c->add_option("--order", so.order, "Order in p of the root expansions")->check(CLI::Range(2, 16));
    c->add_option("--samples", so.samples, "Number of sample points")->check(CLI::Range(1, 1000));
    c->add_option("--seed", so.seed, "Sampling seed");
    c->add_option("--tol", so.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
  };

  std::string algebra_name;
  auto* algebra = app.add_subcommand("algebra", "Structure data of a classical simple Lie algebra");
  algebra->add_option("name", algebra_name, "Descriptor such as A2, B3, so5")->required();
  emit_opt(algebra);

  auto* pencil = app.add_subcommand("pencil", "Construct and validate a pencil");
  pencil->add_option("--pencil", target, "Builtin name or JSON file")->required();
  emit_opt(pencil);

  auto* reduce = app.add_subcommand("reduce", "Bi-Hamiltonian reduction onto the gauge slice");
  reduce->add_option("--pencil", target, "Builtin name or JSON file")->required();
  reduce->add_option("--gauge", gauge_file, "Gauge JSON file (overrides the pencil's gauge)");
  reduce->add_option("--max-order", max_order, "Maximum Neumann steps for the D-block inverse")
      ->check(CLI::Range(0, 200));
  emit_opt(reduce);

  auto* invariants = app.add_subcommand("invariants", "Characteristic polynomial and central invariants");
  invariants->add_option("--pencil", target, "Builtin name or JSON file")->required();
  invariants->add_option("--gauge", gauge_file, "Gauge JSON file");
  invariants->add_option("--max-order", max_order, "Maximum Neumann steps when reducing")->check(CLI::Range(0, 200));
  sample_opts(invariants);
  emit_opt(invariants);
  digits_opt(invariants);

  std::string suite = "all";
  int ranks = 6;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "Suite name or 'all'");
  verify->add_option("--ranks", ranks, "Largest rank for the table1 suite")->check(CLI::Range(1, 12));
  sample_opts(verify);
  emit_opt(verify);
  digits_opt(verify);

  auto* list = app.add_subcommand("list", "List builtin pencils and verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ppl_format fmt;
    check(ppl_parse_format(emit.c_str(), &fmt));
    if (digits) check(ppl_set_digits(digits));
    so.max_order = max_order;

    auto load = [&](Pencil& p) {
      check(ppl_pencil_load(target.c_str(), &p.p));
      if (!gauge_file.empty()) check(ppl_pencil_set_gauge_file(p.p, gauge_file.c_str()));
    };

    if (*algebra) {
      Algebra a;
      check(ppl_algebra_new(algebra_name.c_str(), &a.p));
      Str s;
      check(ppl_algebra_render(a.p, fmt, &s.p));
      print(s);
    } else if (*pencil) {
      Pencil p;
      load(p);
      Str s;
      check(ppl_pencil_render(p.p, fmt, &s.p));
      print(s);
    } else if (*reduce) {
      Pencil p;
      load(p);
      Reduced r;
      check(ppl_reduce(p.p, max_order, &r.p));
      Str s;
      check(ppl_reduced_render(r.p, fmt, &s.p));
      print(s);
    } else if (*invariants) {
      Pencil p;
      load(p);
      Str s;
      check(ppl_invariants(p.p, &so, fmt, &s.p));
      print(s);
    } else if (*verify) {
      Str s;
      int passed = 0;
      check(ppl_verify(suite.c_str(), ranks, &so, fmt, &s.p, &passed));
      print(s);
      return passed ? 0 : 1;
    } else if (*list) {
      Str b, v;
      check(ppl_builtin_names(&b.p));
      check(ppl_suite_names(&v.p));
      std::cout << "pencils:\n" << b.p << "ds:<algebra>\nscalar:c=<expr in u>\n\nsuites:\n" << v.p << "all\n";
    }
  } catch (const Failure& f) {
    std::cerr << "error (" << ppl_status_name(f.status) << "): " << ppl_last_error() << "\n";
    return exit_code(f.status);
  }
  return 0;
}
